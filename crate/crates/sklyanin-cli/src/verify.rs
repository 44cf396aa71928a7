//! The `verify-all` battery: every headline computation in one run, each
//! check recorded with its expected value and provenance.

use crate::commands::{binomial_dims, doubling_dims, fmt_list, over_field, poly, word, CliError, Output};
use crate::report::{CheckRecord, Report, IDENTITY, ORACLE, PRINTED};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use sklyanin::geometry::{
    component_specs, e_cubic, enumerate_vd, forms_vanish, line_point, m_matrix, matrix_rank,
    singular_locus, z_set, ProjPoint,
};
use sklyanin::linalg::det3;
use sklyanin::ppring::{
    check_degree_one_generation, component_grids, degree_one_multiples_dim, dim_b, dim_b_oracle,
    eval_poly_on_tuple, glued_section_dim, hilbert_series_report, kernel_basis,
};
use sklyanin::quadops::{
    certify_normal, koszul_dual, omega, ore_extension, ore_presentation, quadratic_pairing,
    zhang_twist, GradedAutomorphism, OreData,
};
use sklyanin::rewrite::MonomialOrder;
use sklyanin::scalars::Field;
use sklyanin::{
    complete_to_degree, nc_multiply, relation_span_equal, sklyanin_presentation, Fp, NcPoly,
    Q, QuadPresentation, Scalar,
};

/// Fixed sampling seed: reports must be byte-identical across runs.
const SAMPLE_SEED: u64 = 0x534b_4c59;

/// Printed degree-wise dimensions of the point-parameter ring for d = 2..8.
const B_VALUES: [u64; 7] = [6, 12, 18, 30, 42, 66, 90];

/// Section depths; `--fast` halves the deep ones.
struct Bounds {
    hilbert_d: usize,
    probe_d: usize,
    dual_d: usize,
    chain_d: usize,
    twist_d: usize,
    rand_points: usize,
    vd_degrees: Vec<usize>,
    singular_hi: usize,
    oracle_d: usize,
    mod7_agree_d: usize,
    series_d: usize,
    gen_d: usize,
    kernel_d: usize,
}

impl Bounds {
    fn new(fast: bool, max_degree: usize, oracle_max: usize) -> Bounds {
        if fast {
            Bounds {
                hilbert_d: (max_degree / 2).max(2),
                probe_d: 3,
                dual_d: 3,
                chain_d: 4,
                twist_d: 3,
                rand_points: 50,
                vd_degrees: vec![2],
                singular_hi: 4,
                oracle_d: (oracle_max / 2).max(2),
                mod7_agree_d: 6,
                series_d: 6,
                gen_d: 5,
                kernel_d: (oracle_max / 2).clamp(2, 5),
            }
        } else {
            Bounds {
                hilbert_d: max_degree,
                probe_d: 6,
                dual_d: 5,
                chain_d: 8,
                twist_d: 6,
                rand_points: 100,
                vd_degrees: vec![2, 3],
                singular_hi: 6,
                oracle_d: oracle_max,
                mod7_agree_d: 8,
                series_d: 12,
                gen_d: 10,
                kernel_d: 5,
            }
        }
    }
}

fn field_label(field: Field) -> String {
    match field {
        Field::Rationals => "q".to_string(),
        Field::Cyclotomic3 => "qzeta".to_string(),
        Field::Prime(p) => format!("fp:{p}"),
    }
}

pub fn verify_all_cmd(
    field: Field,
    order_name: &str,
    max_degree: usize,
    oracle_max: usize,
    fast: bool,
) -> Result<Output, CliError> {
    if field == Field::Rationals {
        return Err(CliError::Unsupported(
            "the battery needs a primitive cube root of unity for the twist table and the \
             component geometry; use --field qzeta or fp:<p> with p = 1 mod 3"
                .into(),
        ));
    }
    if max_degree < 2 {
        return Err(CliError::Bounds(format!(
            "the battery needs --max-degree at least 2, got {max_degree}"
        )));
    }
    if oracle_max == 0 {
        return Err(CliError::Bounds(
            "oracle bound 0 is below the minimum use; 1 is allowed, 0 is rejected".into(),
        ));
    }
    if oracle_max > max_degree {
        return Err(CliError::Bounds(format!(
            "oracle bound {oracle_max} exceeds the rewrite bound {max_degree}"
        )));
    }
    let field = if fast && field == Field::Cyclotomic3 {
        Field::Prime(7)
    } else {
        field
    };
    let order = MonomialOrder::parse(order_name)?;
    let bounds = Bounds::new(fast, max_degree, oracle_max);

    let mut rep = Report::new("verify-all", &field_label(field), order_name, bounds.hilbert_d);
    rep.oracle_max = Some(bounds.oracle_d);

    over_field!(field, K, ctx, {
        // The sections are independent, so they run concurrently, each
        // writing its own buffer; the merge below is the single writer and
        // keeps the fixed section order, so reports stay byte-identical.
        let buffer = || Report::new("section", "", "", 0);
        let outcomes: Vec<Result<Report, CliError>> = std::thread::scope(|s| {
            let handles = [
                s.spawn(|| -> Result<Report, CliError> {
                    let mut sec = buffer();
                    hilbert_section::<K>(&mut sec, ctx, order, &bounds)?;
                    Ok(sec)
                }),
                s.spawn(|| -> Result<Report, CliError> {
                    let mut sec = buffer();
                    probe_section(&mut sec, order, &bounds)?;
                    Ok(sec)
                }),
                s.spawn(|| -> Result<Report, CliError> {
                    let mut sec = buffer();
                    zero_divisor_section::<K>(&mut sec, ctx, order, &bounds)?;
                    Ok(sec)
                }),
                s.spawn(|| -> Result<Report, CliError> {
                    let mut sec = buffer();
                    ore_section::<K>(&mut sec, ctx, order, &bounds)?;
                    Ok(sec)
                }),
                s.spawn(|| -> Result<Report, CliError> {
                    let mut sec = buffer();
                    dual_section::<K>(&mut sec, ctx, order, &bounds)?;
                    Ok(sec)
                }),
                s.spawn(|| -> Result<Report, CliError> {
                    let mut sec = buffer();
                    twist_section::<K>(&mut sec, ctx, order, &bounds)?;
                    Ok(sec)
                }),
                s.spawn(|| -> Result<Report, CliError> {
                    let mut sec = buffer();
                    geometry_section::<K>(&mut sec, ctx, &bounds)?;
                    Ok(sec)
                }),
                s.spawn(|| -> Result<Report, CliError> {
                    let mut sec = buffer();
                    enumeration_section(&mut sec, &bounds)?;
                    Ok(sec)
                }),
                s.spawn(|| -> Result<Report, CliError> {
                    let mut sec = buffer();
                    singular_section::<K>(&mut sec, ctx, &bounds)?;
                    Ok(sec)
                }),
                s.spawn(|| -> Result<Report, CliError> {
                    let mut sec = buffer();
                    ppring_section::<K>(&mut sec, ctx, order, &bounds)?;
                    Ok(sec)
                }),
                s.spawn(|| -> Result<Report, CliError> {
                    let mut sec = buffer();
                    generation_section::<K>(&mut sec, ctx, order, &bounds)?;
                    Ok(sec)
                }),
                s.spawn(|| -> Result<Report, CliError> {
                    let mut sec = buffer();
                    kernel_section::<K>(&mut sec, ctx, order, &bounds)?;
                    Ok(sec)
                }),
            ];
            handles.into_iter().map(|h| h.join().expect("section thread")).collect()
        });
        for outcome in outcomes {
            let sec = outcome?;
            rep.records.extend(sec.records);
            rep.extra.extend(sec.extra);
        }
    });

    rep.set_extra("fast", json!(fast));
    rep.finish();
    Ok(Output::Report(rep))
}

fn zeta_of<K: Scalar>(ctx: &K::Ctx) -> Result<K, CliError> {
    K::zeta(ctx).ok_or_else(|| {
        CliError::Unsupported(
            "the battery needs a primitive cube root of unity in the working field".into(),
        )
    })
}

/// The three cube-root representatives (1,1), (zeta,zeta), (1,zeta) as
/// parameter pairs.
fn cube_root_pairs<K: Scalar>(ctx: &K::Ctx) -> Result<Vec<(K, K)>, CliError> {
    let one = K::from_int(ctx, 1);
    let zeta: K = zeta_of(ctx)?;
    Ok(vec![
        (one.clone(), one.clone()),
        (zeta.clone(), zeta.clone()),
        (one, zeta),
    ])
}

fn family<K: Scalar>(ctx: &K::Ctx, b: &K, c: &K) -> Result<QuadPresentation<K>, CliError> {
    let one = K::from_int(ctx, 1);
    Ok(sklyanin_presentation(&one, b, c)?)
}

fn s100<K: Scalar>(ctx: &K::Ctx) -> Result<QuadPresentation<K>, CliError> {
    let one = K::from_int(ctx, 1);
    let zero = K::zero();
    Ok(sklyanin_presentation(&one, &zero, &zero)?)
}

fn dims_to<K: Scalar>(
    pres: &QuadPresentation<K>,
    order: MonomialOrder,
    max_degree: usize,
) -> Result<Vec<u64>, CliError> {
    let cd = max_degree.max(2);
    let rs = complete_to_degree(pres, order, cd);
    let mut dims = rs.hilbert_function(cd)?;
    dims.truncate(max_degree + 1);
    Ok(dims)
}

// ---- section 1: Hilbert functions of the degenerate representatives ----

fn hilbert_section<K: Scalar>(
    rep: &mut Report,
    ctx: &K::Ctx,
    order: MonomialOrder,
    bounds: &Bounds,
) -> Result<(), CliError> {
    let d = bounds.hilbert_d;
    let expected = fmt_list(&doubling_dims(d));
    let mut reps: Vec<(String, QuadPresentation<K>)> = Vec::new();
    for (b, c) in cube_root_pairs::<K>(ctx)? {
        reps.push((format!("S(1,{b},{c})"), family(ctx, &b, &c)?));
    }
    reps.push(("S(1,0,0)".to_string(), s100::<K>(ctx)?));
    for (label, pres) in reps {
        let dims = dims_to(&pres, order, d)?;
        rep.push(CheckRecord::expect(
            "hilbert dims",
            &format!("{label}, d <= {d}"),
            &expected,
            PRINTED,
            fmt_list(&dims),
        ));
    }
    Ok(())
}

// ---- section 2: nondegenerate probe, always over the rationals ----

fn probe_section(rep: &mut Report, order: MonomialOrder, bounds: &Bounds) -> Result<(), CliError> {
    let d = bounds.probe_d;
    let ctx = ();
    let pres = sklyanin_presentation::<Q>(
        &Q::from_int(&ctx, 1),
        &Q::from_int(&ctx, 2),
        &Q::from_int(&ctx, 3),
    )?;
    let dims = dims_to(&pres, order, d)?;
    rep.push(CheckRecord::expect(
        "nondegenerate probe dims",
        &format!("S(1,2,3) over q, d <= {d}"),
        fmt_list(&binomial_dims(d)),
        PRINTED,
        fmt_list(&dims),
    ));
    Ok(())
}

// ---- section 3: zero divisors ----

fn zero_divisor_section<K: Scalar>(
    rep: &mut Report,
    ctx: &K::Ctx,
    order: MonomialOrder,
    _bounds: &Bounds,
) -> Result<(), CliError> {
    let one = K::from_int(ctx, 1);
    for (b, c) in cube_root_pairs::<K>(ctx)? {
        let pres = family(ctx, &b, &c)?;
        let rs = complete_to_degree(&pres, order, 2);
        let c2 = c.clone() * c.clone();
        let b2 = b.clone() * b.clone();
        let left = poly(&[
            ("x", one.clone()),
            ("y", b.clone()),
            ("z", b.clone() * c2),
        ]);
        let right = poly(&[("x", c.clone()), ("y", c.clone()), ("z", b2)]);
        let product = nc_multiply(&left, &right);
        let rels = pres.relations();
        let combo = rels[0].clone() + rels[1].scale(&b) + rels[2].scale(&c);
        let free_equal = product == combo;
        let nf_zero = rs.normal_form(&product)?.is_zero();
        rep.push(CheckRecord::judged(
            "zero divisor factorization",
            &format!("S(1,{b},{c}), (x + by + bc^2 z)(cx + cy + b^2 z)"),
            "equals f1 + b f2 + c f3 and reduces to zero",
            PRINTED,
            match (free_equal, nf_zero) {
                (true, true) => "equals the relation combination; normal form zero".to_string(),
                (fe, nz) => format!("free equality {fe}, normal form zero {nz}"),
            },
            free_equal && nf_zero,
        ));
    }

    let pres = family(ctx, &one, &one)?;
    let rs = complete_to_degree(&pres, order, 2);
    let s = poly(&[("x", one.clone()), ("y", one.clone()), ("z", one)]);
    let square = nc_multiply(&s, &s);
    let nf = rs.normal_form(&square)?;
    rep.push(CheckRecord::expect(
        "(x + y + z)^2 in S(1,1,1)",
        "square of the zero divisor",
        "0",
        PRINTED,
        if nf.is_zero() { "0".to_string() } else { nf.to_string() },
    ));
    Ok(())
}

// ---- section 4: Ore structure and the normal quadric ----

fn ore_section<K: Scalar>(
    rep: &mut Report,
    ctx: &K::Ctx,
    order: MonomialOrder,
    _bounds: &Bounds,
) -> Result<(), CliError> {
    let one = K::from_int(ctx, 1);
    for (b, c) in cube_root_pairs::<K>(ctx)? {
        let inputs = format!("(b, c) = ({b}, {c})");
        let pres = family(ctx, &b, &c)?;
        let ore = ore_presentation(&b, &c)?;
        let spans = relation_span_equal(&ore, &pres);
        rep.push(CheckRecord::judged(
            "ore span equality",
            &inputs,
            "equal spans",
            PRINTED,
            if spans { "equal spans" } else { "different spans" },
            spans,
        ));

        let leibniz = OreData::new(b.clone(), c.clone()).leibniz_holds_on_generators();
        rep.push(CheckRecord::judged(
            "skew derivation leibniz rule",
            &inputs,
            "holds on generators",
            IDENTITY,
            if leibniz { "holds on generators" } else { "fails on a generator" },
            leibniz,
        ));

        let ext = ore_extension(&b, &c)?;
        let rs = complete_to_degree(&ext, order, 4);
        let w = omega(&b, &c);
        let cert = certify_normal(&rs, &w)?;
        let expected = format!("({b}, {}, {one})", b.clone() * b.clone());
        let computed = match cert.diagonal_scalars() {
            Some(s) => format!("({}, {}, {})", s[0], s[1], s[2]),
            None => "no diagonal certificate".to_string(),
        };
        rep.push(CheckRecord::expect(
            "omega certificate scalars",
            &inputs,
            &expected,
            ORACLE,
            &computed,
        ));
    }
    Ok(())
}

// ---- section 5: Koszul duals ----

/// The dual span of S(1,b,c) at cube roots: z^2 - c xy and yz - c^2 x^2 as
/// printed, then zy - b yz, y^2 - b^2 c xz, zx - b^2 xz, yx - b xy. The
/// classical list transposes b and b^2 in the last four; the pairing check
/// at b = zeta rejects that version (they agree at b = 1).
fn cube_root_dual<K: Scalar>(b: &K, c: &K) -> Result<QuadPresentation<K>, CliError> {
    let neg = |k: K| -k;
    let b2 = b.clone() * b.clone();
    let c2 = c.clone() * c.clone();
    let rel = |lead: &str, tail: &str, coef: K| {
        let mut p: NcPoly<K> = NcPoly::monomial(word(lead), K::one());
        p.add_term(word(tail), coef);
        p
    };
    let rels = vec![
        rel("zz", "xy", neg(c.clone())),
        rel("yz", "xx", neg(c2)),
        rel("zy", "yz", neg(b.clone())),
        rel("yy", "xz", neg(b2.clone() * c.clone())),
        rel("zx", "xz", neg(b2.clone())),
        rel("yx", "xy", neg(b.clone())),
    ];
    Ok(QuadPresentation::new(rels)?)
}

fn dual_section<K: Scalar>(
    rep: &mut Report,
    ctx: &K::Ctx,
    order: MonomialOrder,
    bounds: &Bounds,
) -> Result<(), CliError> {
    let dual_dims_expected: Vec<u64> =
        (0..=bounds.dual_d).map(|d| if d == 0 { 1 } else { 3 }).collect();

    let mut reps: Vec<(String, QuadPresentation<K>, bool)> = Vec::new();
    for (b, c) in cube_root_pairs::<K>(ctx)? {
        reps.push((format!("S(1,{b},{c})"), family(ctx, &b, &c)?, true));
    }
    reps.push(("S(1,0,0)".to_string(), s100::<K>(ctx)?, false));

    for (label, pres, cube_root) in &reps {
        let dual = koszul_dual(pres);
        let inputs = format!("{label}, d <= {}", bounds.dual_d);

        let all_zero = pres.relations().iter().all(|r| {
            dual.relations().iter().all(|s| quadratic_pairing(r, s).is_zero())
        });
        rep.push(CheckRecord::judged(
            "dual pairing vanishes",
            &inputs,
            "zero on all pairs",
            IDENTITY,
            if all_zero { "zero on all pairs" } else { "nonzero pair found" },
            all_zero,
        ));

        let round = relation_span_equal(&koszul_dual(&dual), pres);
        rep.push(CheckRecord::judged(
            "double dual span",
            &inputs,
            "equal to the original span",
            IDENTITY,
            if round { "equal to the original span" } else { "different span" },
            round,
        ));

        if *cube_root {
            let (_, b, c) = pres.params().expect("family member");
            let expected = cube_root_dual(b, c)?;
            let matches = relation_span_equal(&dual, &expected);
            rep.push(CheckRecord::judged(
                "dual span at cube roots",
                &inputs,
                "equal spans",
                ORACLE,
                if matches { "equal spans" } else { "different spans" },
                matches,
            ));
        }

        let dims = dims_to(&dual, order, bounds.dual_d)?;
        rep.push(CheckRecord::expect(
            "dual dims",
            &inputs,
            fmt_list(&dual_dims_expected),
            if *cube_root { PRINTED } else { ORACLE },
            fmt_list(&dims),
        ));
    }

    // The monomial case: the word chain x, xy, xyz, xyzx, ... stays
    // irreducible in the dual of S(1,0,0).
    let dual = koszul_dual(&s100::<K>(ctx)?);
    let rs = complete_to_degree(&dual, order, bounds.chain_d.max(2));
    let chain: String = "xyz".chars().cycle().take(bounds.chain_d).collect();
    let ok = (1..=chain.len()).all(|d| rs.is_irreducible(&word(&chain[..d])));
    rep.push(CheckRecord::judged(
        "monomial dual word chain",
        &format!("S(1,0,0)^!, chain {chain}"),
        "irreducible in every degree",
        PRINTED,
        if ok { "irreducible in every degree" } else { "reducible prefix found" },
        ok,
    ));
    Ok(())
}

// ---- section 6: the twist table ----

fn twist_section<K: Scalar>(
    rep: &mut Report,
    ctx: &K::Ctx,
    order: MonomialOrder,
    bounds: &Bounds,
) -> Result<(), CliError> {
    let one = K::from_int(ctx, 1);
    let zero = K::zero();
    let zeta: K = zeta_of(ctx)?;
    let zeta2 = zeta.clone() * zeta.clone();
    let sigma = GradedAutomorphism::<K>::sigma(ctx).ok_or_else(|| {
        CliError::Unsupported("the twist table needs a primitive cube root of unity".into())
    })?;
    let sigma_inv = sigma.inverse();
    let tau = GradedAutomorphism::<K>::tau();
    let tau_inv = tau.inverse();

    // Each row: source parameters, automorphism, target parameters.
    let rows: Vec<((K, K, K), &GradedAutomorphism<K>, &str, (K, K, K))> = vec![
        ((one.clone(), one.clone(), one.clone()), &sigma, "sigma",
         (one.clone(), zeta.clone(), zeta2.clone())),
        ((one.clone(), one.clone(), zeta.clone()), &sigma, "sigma",
         (one.clone(), zeta.clone(), one.clone())),
        ((one.clone(), zeta.clone(), zeta.clone()), &sigma, "sigma",
         (one.clone(), zeta2.clone(), one.clone())),
        ((one.clone(), one.clone(), one.clone()), &sigma_inv, "sigma^-1",
         (one.clone(), zeta2.clone(), zeta.clone())),
        ((one.clone(), one.clone(), zeta.clone()), &sigma_inv, "sigma^-1",
         (one.clone(), zeta2.clone(), zeta2.clone())),
        ((one.clone(), zeta.clone(), zeta.clone()), &sigma_inv, "sigma^-1",
         (one.clone(), one.clone(), zeta2.clone())),
        ((one.clone(), zero.clone(), zero.clone()), &tau, "tau",
         (zero.clone(), one.clone(), zero.clone())),
        ((one.clone(), zero.clone(), zero.clone()), &tau_inv, "tau^-1",
         (zero.clone(), zero.clone(), one.clone())),
    ];

    let expected_dims = fmt_list(&doubling_dims(bounds.twist_d));
    for ((a, b, c), auto, auto_name, (ta, tb, tc)) in rows {
        let src = sklyanin_presentation(&a, &b, &c)?;
        let tgt = sklyanin_presentation(&ta, &tb, &tc)?;
        let twisted = zhang_twist(&src, auto);
        let matches = relation_span_equal(&twisted, &tgt);
        rep.push(CheckRecord::judged(
            "twist identity",
            &format!("{auto_name} on S({a},{b},{c}) vs S({ta},{tb},{tc})"),
            "equal spans",
            PRINTED,
            if matches { "equal spans" } else { "different spans" },
            matches,
        ));

        let dims = dims_to(&twisted, order, bounds.twist_d)?;
        rep.push(CheckRecord::expect(
            "twisted algebra dims",
            &format!("{auto_name} on S({a},{b},{c}), d <= {}", bounds.twist_d),
            &expected_dims,
            PRINTED,
            fmt_list(&dims),
        ));
    }
    Ok(())
}

// ---- section 7a: step-matrix geometry ----

fn sample_points<K: Scalar>(
    ctx: &K::Ctx,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<ProjPoint<K>> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let coords = [
            rng.gen_range(-9i64..=9),
            rng.gen_range(-9i64..=9),
            rng.gen_range(-9i64..=9),
        ];
        if let Ok(p) = ProjPoint::from_ints(ctx, coords) {
            out.push(p);
        }
    }
    out
}

fn geometry_section<K: Scalar>(
    rep: &mut Report,
    ctx: &K::Ctx,
    bounds: &Bounds,
) -> Result<(), CliError> {
    let one = K::from_int(ctx, 1);
    let zero = K::zero();
    let zeta: K = zeta_of(ctx)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);

    // Representative parameters with the label of their rank-one point set.
    let reps: Vec<((K, K, K), u8)> = vec![
        ((one.clone(), one.clone(), one.clone()), 1),
        ((one.clone(), one.clone(), zeta.clone()), 2),
        ((one.clone(), zeta.clone(), zeta.clone()), 3),
        ((one.clone(), zero.clone(), zero.clone()), 0),
    ];

    for ((a, b, c), which) in &reps {
        let pts = sample_points::<K>(ctx, bounds.rand_points, &mut rng);
        let agree = pts.iter().all(|p| det3(&m_matrix(a, b, c, p)) == e_cubic(a, b, c, p));
        rep.push(CheckRecord::judged(
            "step matrix determinant equals curve cubic",
            &format!("S({a},{b},{c}), {} random points", bounds.rand_points),
            "equal at every sample",
            ORACLE,
            if agree { "equal at every sample" } else { "mismatch found" },
            agree,
        ));

        let zs = z_set::<K>(ctx, *which)?;
        let rank_one = zs.iter().all(|p| matrix_rank(&m_matrix(a, b, c, p)) == 1);
        rep.push(CheckRecord::judged(
            "rank one on the fixed point set",
            &format!("S({a},{b},{c}), Z_{which}"),
            "rank 1 at all points",
            PRINTED,
            if rank_one { "rank 1 at all points" } else { "other rank found" },
            rank_one,
        ));
    }

    // Rank dichotomy for S(1,1,1): generic points of the three component
    // lines, away from the fixed points, have rank exactly 2.
    let z1 = z_set::<K>(ctx, 1)?;
    let mut rank_two = true;
    let mut samples = 0usize;
    for k in 0..3u8 {
        for (s, t) in [(1i64, 1i64), (1, 2), (2, 1), (1, 3), (3, 2)] {
            let p = match line_point::<K>(ctx, k, &K::from_int(ctx, s), &K::from_int(ctx, t)) {
                Ok(p) => p,
                Err(_) => continue,
            };
            if z1.contains(&p) {
                continue;
            }
            samples += 1;
            if matrix_rank(&m_matrix(&one, &one, &one, &p)) != 2 {
                rank_two = false;
            }
        }
    }
    rep.push(CheckRecord::judged(
        "rank two off the fixed points",
        &format!("S(1,1,1), {samples} line points outside Z_1"),
        "rank 2 at all samples",
        PRINTED,
        if rank_two { "rank 2 at all samples" } else { "other rank found" },
        rank_two,
    ));
    Ok(())
}

// ---- section 7b: truncated point-scheme enumeration over F_7 ----

fn enumeration_section(rep: &mut Report, bounds: &Bounds) -> Result<(), CliError> {
    let p = 7u64;
    let one = Fp::new(p, 1);
    let pres = sklyanin_presentation(&one, &one, &one)?;

    for &d in &bounds.vd_degrees {
        let inputs = format!("S(1,1,1), d = {d}, F_{p}");
        let tuples = enumerate_vd(&pres, d, p);
        let expected: Option<u64> = match d {
            2 => Some(42),
            3 => Some(210),
            _ => None,
        };
        rep.push(match expected {
            Some(n) => CheckRecord::expect("point count", &inputs, n, ORACLE, tuples.len()),
            None => CheckRecord::report("point count", &inputs, tuples.len()),
        });

        let specs = component_specs(&pres, d)?;
        let enumerated: std::collections::BTreeSet<Vec<[u64; 3]>> = tuples
            .iter()
            .map(|t| t.iter().map(|q| q.key()).collect())
            .collect();
        let mut union: std::collections::BTreeSet<Vec<[u64; 3]>> = Default::default();
        let per_spec: Vec<std::collections::BTreeSet<Vec<[u64; 3]>>> = specs
            .iter()
            .map(|s| {
                s.points_mod_p(p)
                    .iter()
                    .map(|t| t.iter().map(|q| q.key()).collect())
                    .collect()
            })
            .collect();
        for s in &per_spec {
            union.extend(s.iter().cloned());
        }
        rep.push(CheckRecord::judged(
            "enumeration equals component union",
            &inputs,
            "equal point sets",
            ORACLE,
            if enumerated == union { "equal point sets" } else { "sets differ" },
            enumerated == union,
        ));

        let doubles = union
            .iter()
            .filter(|t| per_spec.iter().filter(|s| s.contains(*t)).count() > 1)
            .count();
        rep.push(CheckRecord::expect(
            "multi-component points",
            &inputs,
            "6",
            PRINTED,
            doubles,
        ));
    }
    Ok(())
}

// ---- section 8: the singular locus ----

fn singular_section<K: Scalar>(
    rep: &mut Report,
    ctx: &K::Ctx,
    bounds: &Bounds,
) -> Result<(), CliError> {
    let one = K::from_int(ctx, 1);
    let pres = sklyanin_presentation(&one, &one, &one)?;
    for d in 2..=bounds.singular_hi {
        let inputs = format!("S(1,1,1), d = {d}");
        let singular = singular_locus(d);
        rep.push(CheckRecord::expect(
            "singular point count",
            &inputs,
            "6",
            PRINTED,
            singular.len(),
        ));

        let specs = component_specs(&pres, d)?;
        let mut pattern_ok = true;
        for sp in &singular {
            let tuple = sp.realize::<K>(ctx, d)?;
            if !forms_vanish(&pres, &tuple) {
                pattern_ok = false;
                break;
            }
            let (i, j) = sp.component_indices();
            for spec in &specs {
                let inside = spec.contains(ctx, &tuple)?;
                if inside != (spec.index == i || spec.index == j) {
                    pattern_ok = false;
                }
            }
        }
        rep.push(CheckRecord::judged(
            "singular membership pattern",
            &inputs,
            "each singular point lies in exactly its two indexed components",
            PRINTED,
            if pattern_ok { "pattern holds" } else { "pattern violated" },
            pattern_ok,
        ));
    }
    Ok(())
}

// ---- section 9: point-parameter ring dimensions ----

fn three_way_agreement<K: Scalar>(ctx: &K::Ctx, lo: usize, hi: usize) -> Result<bool, CliError> {
    for d in lo..=hi {
        let closed = dim_b(d);
        let oracle = dim_b_oracle::<K>(ctx, d, hi)? as u64;
        let glued = glued_section_dim::<K>(ctx, d)? as u64;
        if closed != oracle || closed != glued {
            return Ok(false);
        }
    }
    Ok(true)
}

fn ppring_section<K: Scalar>(
    rep: &mut Report,
    ctx: &K::Ctx,
    _order: MonomialOrder,
    bounds: &Bounds,
) -> Result<(), CliError> {
    let values: Vec<u64> = (2..=8).map(dim_b).collect();
    rep.push(CheckRecord::expect(
        "point parameter dims",
        "closed form, d = 2..8",
        fmt_list(&B_VALUES),
        PRINTED,
        fmt_list(&values),
    ));

    let field = K::field_name(ctx);
    let agree = three_way_agreement::<K>(ctx, 2, bounds.oracle_d)?;
    rep.push(CheckRecord::judged(
        "three-way dimension agreement",
        &format!("closed form vs evaluation rank vs glued sections, d = 2..{}, {field}", bounds.oracle_d),
        "all three agree",
        ORACLE,
        if agree { "all three agree" } else { "disagreement found" },
        agree,
    ));

    let ctx7 = 7u64;
    let agree7 = three_way_agreement::<Fp>(&ctx7, 2, bounds.mod7_agree_d)?;
    rep.push(CheckRecord::judged(
        "three-way dimension agreement",
        &format!(
            "closed form vs evaluation rank vs glued sections, d = 2..{}, F_7",
            bounds.mod7_agree_d
        ),
        "all three agree",
        ORACLE,
        if agree7 { "all three agree" } else { "disagreement found" },
        agree7,
    ));

    let series = hilbert_series_report(bounds.series_d);
    rep.push(CheckRecord::judged(
        "series coefficients",
        &format!("(1 + t^2)(1 + 2t) / ((1 - 2t^2)(1 - t)), d <= {}", bounds.series_d),
        "series matches the dims",
        PRINTED,
        if series.series_match { "series matches the dims" } else { "coefficient mismatch" },
        series.series_match,
    ));
    rep.push(CheckRecord::judged(
        "even step recurrence",
        &format!("dim B_(d+2) = 2 dim B_d + 6, d <= {}", bounds.series_d),
        "recurrence holds",
        ORACLE,
        if series.even_step_recurrence { "recurrence holds" } else { "recurrence fails" },
        series.even_step_recurrence,
    ));
    let ratios: Vec<String> = series.growth_ratios.iter().map(|r| format!("{r:.4}")).collect();
    rep.push(CheckRecord::report(
        "even step growth ratios",
        "dim B_(d+2) / dim B_d, decreasing toward 2",
        format!("[{}]", ratios.join(", ")),
    ));
    Ok(())
}

// ---- section 10: generation in degree one ----

fn generation_section<K: Scalar>(
    rep: &mut Report,
    ctx: &K::Ctx,
    order: MonomialOrder,
    bounds: &Bounds,
) -> Result<(), CliError> {
    let one = K::from_int(ctx, 1);
    let pres = sklyanin_presentation(&one, &one, &one)?;
    let own_hi = bounds.gen_d.min(8);
    let rs = complete_to_degree(&pres, order, own_hi.max(2));
    let field = K::field_name(ctx);
    let mut all = true;
    for d in 2..=own_hi {
        if !check_degree_one_generation(ctx, &rs, d)? {
            all = false;
        }
    }
    rep.push(CheckRecord::judged(
        "generation in degree one",
        &format!("evaluation rank of normal words equals dim B_d, d = 2..{own_hi}, {field}"),
        "rank matches in every degree",
        ORACLE,
        if all { "rank matches in every degree" } else { "rank shortfall found" },
        all,
    ));

    let ctx7 = 7u64;
    let one7 = Fp::new(7, 1);
    let pres7 = sklyanin_presentation(&one7, &one7, &one7)?;
    let rs7 = complete_to_degree(&pres7, order, bounds.gen_d.max(2));
    let mut all7 = true;
    for d in 2..=bounds.gen_d {
        if !check_degree_one_generation(&ctx7, &rs7, d)? {
            all7 = false;
        }
    }
    rep.push(CheckRecord::judged(
        "generation in degree one",
        &format!("evaluation rank of normal words equals dim B_d, d = 2..{}, F_7", bounds.gen_d),
        "rank matches in every degree",
        ORACLE,
        if all7 { "rank matches in every degree" } else { "rank shortfall found" },
        all7,
    ));
    Ok(())
}

// ---- section 11: the kernel of evaluation ----

fn kernel_section<K: Scalar>(
    rep: &mut Report,
    ctx: &K::Ctx,
    order: MonomialOrder,
    bounds: &Bounds,
) -> Result<(), CliError> {
    let one = K::from_int(ctx, 1);
    let pres = sklyanin_presentation(&one, &one, &one)?;
    let hi = bounds.kernel_d;
    let rs = complete_to_degree(&pres, order, hi.max(2));

    let mut kernel_dims: Vec<u64> = Vec::new();
    let mut bases = Vec::new();
    for d in 1..=hi {
        let basis = kernel_basis(ctx, &rs, d)?;
        kernel_dims.push(basis.len() as u64);
        bases.push(basis);
    }

    let low = hi.min(4);
    rep.push(CheckRecord::expect(
        "kernel dims through degree 4",
        &format!("S(1,1,1), d = 1..{low}"),
        fmt_list(&[0u64, 0, 0, 6][..low]),
        PRINTED,
        fmt_list(&kernel_dims[..low]),
    ));
    if hi >= 5 {
        rep.push(CheckRecord::expect(
            "kernel dim in degree 5",
            "S(1,1,1)",
            "18",
            ORACLE,
            kernel_dims[4],
        ));
    }

    if hi >= 4 {
        let grids = component_grids::<K>(ctx, 4)?;
        let zero_eval = bases[3].iter().all(|kappa| {
            grids.iter().all(|g| g.tuples.iter().all(|t| eval_poly_on_tuple(kappa, t).is_zero()))
        });
        rep.push(CheckRecord::judged(
            "degree 4 kernel evaluates to zero",
            "six basis elements on every grid tuple of V_4",
            "all evaluations zero",
            IDENTITY,
            if zero_eval { "all evaluations zero" } else { "nonzero evaluation found" },
            zero_eval,
        ));
    }

    if hi >= 5 {
        let mult = degree_one_multiples_dim(&rs, &bases[3], 5)?;
        let fresh = kernel_dims[4] as usize - mult;
        rep.push(CheckRecord::report(
            "degree 5 generators outside S1*K4 + K4*S1",
            &format!("dim K_5 = {}, degree-one multiples span {mult}", kernel_dims[4]),
            fresh,
        ));
    }
    Ok(())
}
