//! Randomized property suites: field axioms in all three scalar fields,
//! the specialization homomorphism into prime fields, confluence of
//! completed rewriting systems, order invariance of graded dimensions,
//! and multiplicativity of grid evaluation.

use num_traits::One;
use proptest::prelude::*;
use sklyanin::freealg::{
    nc_multiply, parse_presentation, print_presentation, relation_span_equal,
    sklyanin_presentation, NcPoly, QuadPresentation, Word,
};
use sklyanin::ppring::{component_grids, eval_poly_on_tuple, eval_word_on_tuple};
use sklyanin::rewrite::{complete_to_degree, left_multiply, right_multiply, MonomialOrder};
use sklyanin::scalars::{specialize, Scalar};
use sklyanin::{Fp, Q, QZeta};

/// Primes p = 1 mod 3, so every pool field has a primitive cube root of unity.
const PRIMES: [u64; 8] = [7, 13, 19, 31, 37, 43, 61, 67];

/// All six generator precedences.
const ORDERS: [&str; 6] = ["x,y,z", "x,z,y", "y,x,z", "y,z,x", "z,x,y", "z,y,x"];

fn small_rational() -> impl Strategy<Value = Q> {
    // Denominators stay below every pool prime, so specialization is total.
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

fn small_qzeta() -> impl Strategy<Value = QZeta> {
    (small_rational(), small_rational()).prop_map(|(c0, c1)| QZeta::new(c0, c1))
}

/// A word of degree at most `max_len` read off a byte window.
fn word_from(bytes: &[u8], max_len: usize) -> Word {
    let len = (bytes[0] as usize) % (max_len + 1);
    Word(bytes[1..1 + len].iter().map(|b| b % 3).collect())
}

/// Up to three terms with small integer coefficients, degree at most `max_deg`.
fn poly_from<K: Scalar>(ctx: &K::Ctx, bytes: &[u8], max_deg: usize) -> NcPoly<K> {
    let mut p = NcPoly::zero_poly();
    for chunk in bytes.chunks(6).take(3) {
        if chunk.len() < 6 {
            break;
        }
        let w = word_from(&chunk[..5], max_deg);
        let c = K::from_int(ctx, i64::from(chunk[5]) - 128);
        p.add_term(w, c);
    }
    p
}

fn check_field_axioms<K: Scalar>(ctx: &K::Ctx, a: K, b: K, c: K) {
    let zero = K::zero();
    let one = K::one();
    assert_eq!(
        (a.clone() + b.clone()) + c.clone(),
        a.clone() + (b.clone() + c.clone())
    );
    assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
    assert_eq!(
        (a.clone() * b.clone()) * c.clone(),
        a.clone() * (b.clone() * c.clone())
    );
    assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
    assert_eq!(
        a.clone() * (b.clone() + c.clone()),
        a.clone() * b.clone() + a.clone() * c.clone()
    );
    assert_eq!(a.clone() + zero.clone(), a.clone());
    assert_eq!(a.clone() * one.clone(), a.clone());
    assert_eq!(a.clone() + (-a.clone()), zero.clone());
    assert_eq!(a.clone() - b.clone(), a.clone() + (-b.clone()));
    match a.inv() {
        Some(ai) => assert_eq!(a.clone() * ai, one.clone()),
        None => assert_eq!(a, zero),
    }
    if let Some(w) = K::zeta(ctx) {
        assert_ne!(w, one);
        assert_eq!(one.clone() + w.clone() + w.clone() * w.clone(), K::zero());
        assert_eq!(w.clone() * w.clone() * w, one);
    }
}

/// Presentation pool shared by the rewriting suites: random members of the
/// Sklyanin family over a prime field, arbitrary independent quadratic
/// relations over a prime field, the cube-root representatives over Q(zeta),
/// and the nondegenerate probe S(1,2,3) over Q.
#[derive(Clone, Debug)]
enum PresCase {
    SklyaninFp { p: u64, a: i64, b: i64, c: i64 },
    RandomFp { p: u64, rows: Vec<[i64; 9]> },
    CubeRoot { bi: usize, ci: usize },
    Probe,
}

fn pres_case() -> impl Strategy<Value = PresCase> {
    prop_oneof![
        (0..PRIMES.len(), -4i64..=4, -4i64..=4, -4i64..=4)
            .prop_filter("parameters not all zero", |(_, a, b, c)| {
                !(*a == 0 && *b == 0 && *c == 0)
            })
            .prop_map(|(pi, a, b, c)| PresCase::SklyaninFp { p: PRIMES[pi], a, b, c }),
        (
            0..PRIMES.len(),
            prop::collection::vec(prop::array::uniform9(-4i64..=4), 1..=3)
        )
            .prop_map(|(pi, rows)| PresCase::RandomFp { p: PRIMES[pi], rows }),
        (0..3usize, 0..3usize).prop_map(|(bi, ci)| PresCase::CubeRoot { bi, ci }),
        Just(PresCase::Probe),
    ]
}

fn build_random_fp(p: u64, rows: &[[i64; 9]]) -> Option<QuadPresentation<Fp>> {
    let rels: Vec<NcPoly<Fp>> = rows
        .iter()
        .map(|row| {
            let frow: Vec<Fp> = row.iter().map(|n| Fp::new(p, *n)).collect();
            NcPoly::from_quadratic_row(&frow)
        })
        .collect();
    if rels.iter().any(|r| r.is_zero()) {
        return None;
    }
    QuadPresentation::new(rels).ok()
}

fn zeta_power(k: usize) -> QZeta {
    let z = QZeta::gen_zeta();
    match k % 3 {
        0 => QZeta::one(),
        1 => z,
        _ => z.clone() * z,
    }
}

/// Confluence and normal-form laws for one completed system: every overlap
/// of rule leads resolves to the same normal form by both routes, the ideal
/// reduces to zero, and reduction is idempotent and linear.
fn check_rewrite_properties<K: Scalar>(
    ctx: &K::Ctx,
    pres: &QuadPresentation<K>,
    order: MonomialOrder,
    bound: usize,
    fuel: &[u8],
) {
    let rs = complete_to_degree(pres, order, bound);
    for ra in rs.rules() {
        for rb in rs.rules() {
            let (lu, lv) = (ra.lhs.0.len(), rb.lhs.0.len());
            for k in 1..lu.min(lv) {
                if ra.lhs.0[lu - k..] != rb.lhs.0[..k] || lu + lv - k > bound {
                    continue;
                }
                let head = Word(ra.lhs.0[..lu - k].to_vec());
                let tail = Word(rb.lhs.0[k..].to_vec());
                let via_prefix = right_multiply(&ra.rhs, &tail);
                let via_suffix = left_multiply(&head, &rb.rhs);
                assert_eq!(
                    rs.normal_form(&via_prefix).unwrap(),
                    rs.normal_form(&via_suffix).unwrap(),
                    "overlap of {} and {} resolves differently",
                    ra.lhs,
                    rb.lhs
                );
            }
        }
    }
    let u = word_from(&fuel[0..3], bound - 2);
    let v = word_from(&fuel[3..6], bound - 2 - u.degree().min(bound - 2));
    for r in pres.relations() {
        let urv = left_multiply(&u, &right_multiply(r, &v));
        assert!(
            rs.normal_form(&urv).unwrap().is_zero(),
            "{u} . relation . {v} does not reduce to zero"
        );
    }
    let p = poly_from::<K>(ctx, &fuel[6..24], bound);
    let q = poly_from::<K>(ctx, &fuel[24..42], bound);
    let np = rs.normal_form(&p).unwrap();
    assert_eq!(rs.normal_form(&np).unwrap(), np, "reduction is not idempotent");
    assert_eq!(
        rs.normal_form(&(p.clone() + q.clone())).unwrap(),
        rs.normal_form(&p).unwrap() + rs.normal_form(&q).unwrap(),
        "reduction is not linear"
    );
}

fn check_order_invariance<K: Scalar>(pres: &QuadPresentation<K>, o1: usize, o2: usize, d: usize) {
    let h1 = complete_to_degree(pres, MonomialOrder::parse(ORDERS[o1]).unwrap(), d)
        .hilbert_function(d)
        .unwrap();
    let h2 = complete_to_degree(pres, MonomialOrder::parse(ORDERS[o2]).unwrap(), d)
        .hilbert_function(d)
        .unwrap();
    assert_eq!(h1, h2, "dimensions differ between {} and {}", ORDERS[o1], ORDERS[o2]);
}

fn check_round_trip<K: Scalar>(ctx: &K::Ctx, pres: &QuadPresentation<K>) {
    let text = print_presentation(pres);
    let back: QuadPresentation<K> = parse_presentation(ctx, &text).unwrap();
    assert!(
        relation_span_equal(pres, &back),
        "parse(print(P)) changed the relation span:\n{text}"
    );
}

fn check_eval_multiplicative<K: Scalar>(ctx: &K::Ctx, letters: &[u8], cut: usize, which: usize) {
    let u = Word(letters[..cut].to_vec());
    let v = Word(letters[cut..].to_vec());
    let uv = u.concat(&v);
    let grids = component_grids::<K>(ctx, letters.len()).unwrap();
    let grid = &grids[which % grids.len()];
    for tuple in &grid.tuples {
        let whole = eval_word_on_tuple(&uv, tuple);
        let split = eval_word_on_tuple(&u, &tuple[..cut]) * eval_word_on_tuple(&v, &tuple[cut..]);
        assert_eq!(whole, split, "evaluation of {uv} is not the product of its factors");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms_hold_in_q(a in small_rational(), b in small_rational(), c in small_rational()) {
        check_field_axioms::<Q>(&(), a, b, c);
    }

    #[test]
    fn field_axioms_hold_in_qzeta(a in small_qzeta(), b in small_qzeta(), c in small_qzeta()) {
        check_field_axioms::<QZeta>(&(), a, b, c);
    }

    #[test]
    fn field_axioms_hold_in_fp(pi in 0..PRIMES.len(), vs in prop::array::uniform3(-200i64..=200)) {
        let p = PRIMES[pi];
        let [a, b, c] = vs.map(|v| Fp::new(p, v));
        check_field_axioms::<Fp>(&p, a, b, c);
    }

    #[test]
    fn specialization_is_a_ring_homomorphism(
        x in small_qzeta(),
        y in small_qzeta(),
        pi in 0..PRIMES.len(),
    ) {
        let p = PRIMES[pi];
        let zero = Fp::new(p, 0);
        let one = Fp::new(p, 1);
        let sx = specialize(&x, p).unwrap();
        let sy = specialize(&y, p).unwrap();
        prop_assert_eq!(specialize(&(x.clone() + y.clone()), p).unwrap(), sx.clone() + sy.clone());
        prop_assert_eq!(specialize(&(x.clone() * y.clone()), p).unwrap(), sx.clone() * sy);
        prop_assert_eq!(specialize(&QZeta::one(), p).unwrap(), one.clone());
        prop_assert_eq!(specialize(&QZeta::gen_zeta(), p).unwrap(), Fp::zeta(&p).unwrap());
        // Inverses are compatible wherever both sides are defined; an element
        // that maps to zero has no inverse in the local ring at p.
        if let Some(xi) = x.inv() {
            let sxi = specialize(&xi, p);
            if sx == zero {
                prop_assert!(sxi.is_err());
            } else if let Ok(sxi) = sxi {
                prop_assert_eq!(sx * sxi, one);
            }
        }
    }

    #[test]
    fn completed_systems_are_confluent(
        case in pres_case(),
        oi in 0..6usize,
        bound in 3usize..=4,
        fuel in prop::collection::vec(any::<u8>(), 42),
    ) {
        let order = MonomialOrder::parse(ORDERS[oi]).unwrap();
        match &case {
            PresCase::SklyaninFp { p, a, b, c } => {
                let s = |n: i64| Fp::new(*p, n);
                let pres = sklyanin_presentation(&s(*a), &s(*b), &s(*c)).unwrap();
                check_rewrite_properties(p, &pres, order, bound, &fuel);
            }
            PresCase::RandomFp { p, rows } => {
                if let Some(pres) = build_random_fp(*p, rows) {
                    check_rewrite_properties(p, &pres, order, bound, &fuel);
                }
            }
            PresCase::CubeRoot { bi, ci } => {
                let pres =
                    sklyanin_presentation(&QZeta::one(), &zeta_power(*bi), &zeta_power(*ci))
                        .unwrap();
                check_rewrite_properties(&(), &pres, order, bound, &fuel);
            }
            PresCase::Probe => {
                let s = |n: i64| Q::from_int(&(), n);
                let pres = sklyanin_presentation(&s(1), &s(2), &s(3)).unwrap();
                check_rewrite_properties(&(), &pres, order, bound, &fuel);
            }
        }
    }

    #[test]
    fn dimensions_are_order_invariant(
        case in pres_case(),
        o1 in 0..6usize,
        o2 in 0..6usize,
        d in 3usize..=4,
    ) {
        match &case {
            PresCase::SklyaninFp { p, a, b, c } => {
                let s = |n: i64| Fp::new(*p, n);
                let pres = sklyanin_presentation(&s(*a), &s(*b), &s(*c)).unwrap();
                check_order_invariance(&pres, o1, o2, d);
            }
            PresCase::RandomFp { p, rows } => {
                if let Some(pres) = build_random_fp(*p, rows) {
                    check_order_invariance(&pres, o1, o2, d);
                }
            }
            PresCase::CubeRoot { bi, ci } => {
                let pres =
                    sklyanin_presentation(&QZeta::one(), &zeta_power(*bi), &zeta_power(*ci))
                        .unwrap();
                check_order_invariance(&pres, o1, o2, d);
            }
            PresCase::Probe => {
                let s = |n: i64| Q::from_int(&(), n);
                let pres = sklyanin_presentation(&s(1), &s(2), &s(3)).unwrap();
                check_order_invariance(&pres, o1, o2, d);
            }
        }
    }

    #[test]
    fn evaluation_respects_concatenation(
        over_qzeta in any::<bool>(),
        pi in 0..PRIMES.len(),
        d_cut in (2usize..=5).prop_flat_map(|d| (Just(d), 1..d)),
        letters in prop::collection::vec(0u8..3, 5),
        which in 0..100usize,
    ) {
        let (d, cut) = d_cut;
        let ls = &letters[..d];
        if over_qzeta {
            check_eval_multiplicative::<QZeta>(&(), ls, cut, which);
        } else {
            check_eval_multiplicative::<Fp>(&PRIMES[pi], ls, cut, which);
        }
    }

    #[test]
    fn homogeneous_products_evaluate_factorwise(
        pi in 0..PRIMES.len(),
        d_cut in (2usize..=4).prop_flat_map(|d| (Just(d), 1..d)),
        fuel in prop::collection::vec(any::<u8>(), 24),
        which in 0..100usize,
    ) {
        let (d, cut) = d_cut;
        let p = PRIMES[pi];
        // Homogeneous factors of degrees cut and d - cut.
        let mut a: NcPoly<Fp> = NcPoly::zero_poly();
        let mut b: NcPoly<Fp> = NcPoly::zero_poly();
        for (i, chunk) in fuel.chunks(6).enumerate() {
            let letters: Vec<u8> = chunk[..5].iter().map(|x| x % 3).collect();
            let c = Fp::new(p, i64::from(chunk[5]) - 128);
            if i % 2 == 0 {
                a.add_term(Word(letters[..cut].to_vec()), c);
            } else {
                b.add_term(Word(letters[..d - cut].to_vec()), c);
            }
        }
        let grids = component_grids::<Fp>(&p, d).unwrap();
        let grid = &grids[which % grids.len()];
        for tuple in &grid.tuples {
            let whole = eval_poly_on_tuple(&nc_multiply(&a, &b), tuple);
            let split = eval_poly_on_tuple(&a, &tuple[..cut]) * eval_poly_on_tuple(&b, &tuple[cut..]);
            prop_assert_eq!(whole, split);
        }
    }

    #[test]
    fn nc_multiply_is_associative_and_distributive(
        pi in 0..PRIMES.len(),
        fuel in prop::collection::vec(any::<u8>(), 54),
    ) {
        let p = PRIMES[pi];
        let a = poly_from::<Fp>(&p, &fuel[0..18], 3);
        let b = poly_from::<Fp>(&p, &fuel[18..36], 3);
        let c = poly_from::<Fp>(&p, &fuel[36..54], 3);
        prop_assert_eq!(
            nc_multiply(&nc_multiply(&a, &b), &c),
            nc_multiply(&a, &nc_multiply(&b, &c))
        );
        prop_assert_eq!(
            nc_multiply(&a, &(b.clone() + c.clone())),
            nc_multiply(&a, &b) + nc_multiply(&a, &c)
        );
        prop_assert_eq!(
            nc_multiply(&(a.clone() + b.clone()), &c),
            nc_multiply(&a, &c) + nc_multiply(&b, &c)
        );
    }

    #[test]
    fn sklyanin_presentation_is_scale_invariant(
        pi in 0..PRIMES.len(),
        abc in prop::array::uniform3(-4i64..=4),
        lam in 1i64..=6,
    ) {
        prop_assume!(abc.iter().any(|v| *v != 0));
        let p = PRIMES[pi];
        let s = |n: i64| Fp::new(p, n);
        let l = s(lam);
        let p1 = sklyanin_presentation(&s(abc[0]), &s(abc[1]), &s(abc[2])).unwrap();
        let p2 = sklyanin_presentation(
            &(s(abc[0]) * l.clone()),
            &(s(abc[1]) * l.clone()),
            &(s(abc[2]) * l),
        )
        .unwrap();
        prop_assert_eq!(&p1, &p2);
        prop_assert!(relation_span_equal(&p1, &p2));
    }

    #[test]
    fn relation_span_equality_is_an_equivalence(
        pi in 0..PRIMES.len(),
        rows in prop::collection::vec(prop::array::uniform9(-4i64..=4), 2..=3),
        mix in prop::array::uniform6(0i64..=5),
        diag in prop::array::uniform3(1i64..=6),
    ) {
        let p = PRIMES[pi];
        let Some(pres) = build_random_fp(p, &rows) else { return Ok(()); };
        prop_assert!(relation_span_equal(&pres, &pres));
        // Mix by a triangular change of basis with nonzero diagonal.
        let remix = |src: &QuadPresentation<Fp>, shift: i64| {
            let rels = src.relations();
            let mixed: Vec<NcPoly<Fp>> = rels
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let mut m = r.scale(&Fp::new(p, diag[i % 3]));
                    for (j, prev) in rels[..i].iter().enumerate() {
                        m = m + prev.scale(&Fp::new(p, mix[(i + j + shift as usize) % 6]));
                    }
                    m
                })
                .collect();
            QuadPresentation::new(mixed).unwrap()
        };
        let q = remix(&pres, 0);
        let r = remix(&q, 1);
        prop_assert!(relation_span_equal(&pres, &q));
        prop_assert!(relation_span_equal(&q, &pres));
        prop_assert!(relation_span_equal(&q, &r));
        prop_assert!(relation_span_equal(&pres, &r));
    }

    #[test]
    fn printed_presentations_parse_back(case in pres_case()) {
        match &case {
            PresCase::SklyaninFp { p, a, b, c } => {
                let s = |n: i64| Fp::new(*p, n);
                let pres = sklyanin_presentation(&s(*a), &s(*b), &s(*c)).unwrap();
                check_round_trip(p, &pres);
            }
            PresCase::RandomFp { p, rows } => {
                if let Some(pres) = build_random_fp(*p, rows) {
                    check_round_trip(p, &pres);
                }
            }
            PresCase::CubeRoot { bi, ci } => {
                let pres =
                    sklyanin_presentation(&QZeta::one(), &zeta_power(*bi), &zeta_power(*ci))
                        .unwrap();
                check_round_trip(&(), &pres);
            }
            PresCase::Probe => {
                let s = |n: i64| Q::from_int(&(), n);
                let pres = sklyanin_presentation(&s(1), &s(2), &s(3)).unwrap();
                check_round_trip(&(), &pres);
            }
        }
    }
}
