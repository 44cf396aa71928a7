//! The point parameter ring `B` of `S(1,1,1)`: closed-form dimensions, exact
//! evaluation-rank oracles on component grids, glued-section counts across
//! the singular points, generation in degree one, the kernel of the
//! surjection from the algebra, and the Hilbert series of `B`.

use crate::freealg::{NcPoly, Word, N_GENS};
use crate::geometry::{
    component_specs, fixed_point, line_point, singular_locus, zeta_power, ComponentSpec,
    GeometryError, ProjPoint, Slot,
};
use crate::linalg::{self, RowSpace};
use crate::rewrite::{RewriteError, RewriteSystem};
use crate::scalars::Scalar;

use thiserror::Error;

/// Largest degree the full-column oracle accepts by default (3^d columns).
pub const DEFAULT_ORACLE_BOUND: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PpringError {
    #[error("degree {degree} exceeds the oracle bound {bound}")]
    DegreeOverBound { degree: usize, bound: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

/// `dim B_d = 3(2^{floor((d+1)/2)} + 2^{floor(d/2)}) - 6` for d >= 1, and
/// `B_0 = k`.
pub fn dim_b(d: usize) -> u64 {
    if d == 0 {
        return 1;
    }
    3 * ((1u64 << ((d + 1) / 2)) + (1u64 << (d / 2))) - 6
}

/// The grid of one component: `2^l` coordinate tuples for `l` line slots,
/// in bitmask order, with parameter `[1:0]` for a clear bit and `[0:1]` for
/// a set bit. Sections are affine in each line parameter, so grid values
/// determine them exactly.
#[derive(Clone, Debug)]
pub struct Grid<K: Scalar> {
    pub spec: ComponentSpec,
    pub tuples: Vec<Vec<ProjPoint<K>>>,
}

fn grid_params<K: Scalar>(ctx: &K::Ctx, bit: bool) -> (K, K) {
    if bit {
        (K::from_int(ctx, 0), K::from_int(ctx, 1))
    } else {
        (K::from_int(ctx, 1), K::from_int(ctx, 0))
    }
}

/// Grids of all six components of `V_d` for `S(1,1,1)`, in component order.
pub fn component_grids<K: Scalar>(ctx: &K::Ctx, d: usize) -> Result<Vec<Grid<K>>, PpringError> {
    let one = K::from_int(ctx, 1);
    let pres = crate::freealg::sklyanin_presentation(&one, &one, &one)
        .expect("the (1,1,1) presentation is valid");
    let specs = component_specs(&pres, d)?;
    let mut grids = Vec::with_capacity(specs.len());
    for spec in specs {
        let line_slots: Vec<(usize, u8)> = spec
            .slots
            .iter()
            .enumerate()
            .filter_map(|(i, s)| match s {
                Slot::Line(k) => Some((i, *k)),
                Slot::Point(_) => None,
            })
            .collect();
        let l = line_slots.len();
        let mut tuples = Vec::with_capacity(1 << l);
        for mask in 0..(1usize << l) {
            let mut tuple = Vec::with_capacity(d);
            for (i, slot) in spec.slots.iter().enumerate() {
                let pt = match slot {
                    Slot::Point(k) => fixed_point::<K>(ctx, *k)?,
                    Slot::Line(k) => {
                        let j = line_slots.iter().position(|(pos, _)| *pos == i).unwrap();
                        let (s, t) = grid_params::<K>(ctx, mask >> j & 1 == 1);
                        line_point::<K>(ctx, *k, &s, &t)?
                    }
                };
                tuple.push(pt);
            }
            tuples.push(tuple);
        }
        grids.push(Grid { spec, tuples });
    }
    Ok(grids)
}

/// Straight evaluation of a word on a coordinate tuple: the j-th letter
/// reads the j-th point.
pub fn eval_word_on_tuple<K: Scalar>(w: &Word, tuple: &[ProjPoint<K>]) -> K {
    assert_eq!(w.degree(), tuple.len());
    let mut acc = K::one();
    for (g, p) in w.0.iter().zip(tuple) {
        acc = acc * p.coord(*g).clone();
    }
    acc
}

/// Evaluation of a homogeneous polynomial on a tuple of matching length.
pub fn eval_poly_on_tuple<K: Scalar>(p: &NcPoly<K>, tuple: &[ProjPoint<K>]) -> K {
    let mut acc = K::zero();
    for (w, c) in p.iter() {
        acc = acc + c.clone() * eval_word_on_tuple(w, tuple);
    }
    acc
}

/// The grid-value vector of a word across all components, blocks in grid
/// order.
fn word_column<K: Scalar>(w: &Word, grids: &[Grid<K>]) -> Vec<K> {
    let mut col = Vec::new();
    for g in grids {
        for t in &g.tuples {
            col.push(eval_word_on_tuple(w, t));
        }
    }
    col
}

/// Incremental rank of a stream of dense vectors. Once the complement of the
/// accumulated span is small, membership is tested against a cached basis of
/// the orthogonal complement (a handful of dot products) instead of a full
/// elimination pass.
struct RankAccumulator<K: Scalar> {
    space: RowSpace<K>,
    ambient: usize,
    complement: Option<Vec<Vec<K>>>,
}

const COMPLEMENT_CACHE_THRESHOLD: usize = 32;

impl<K: Scalar> RankAccumulator<K> {
    fn new(ambient: usize) -> Self {
        RankAccumulator { space: RowSpace::new(ambient), ambient, complement: None }
    }

    fn rank(&self) -> usize {
        self.space.rank()
    }

    fn add(&mut self, v: Vec<K>) {
        if let Some(comp) = &self.complement {
            let orthogonal = comp.iter().all(|n| {
                let mut s = K::zero();
                for (a, b) in n.iter().zip(v.iter()) {
                    if !a.is_zero() && !b.is_zero() {
                        s = s + a.clone() * b.clone();
                    }
                }
                s.is_zero()
            });
            if orthogonal {
                // v is orthogonal to the complement of the span, hence in it.
                return;
            }
        }
        if self.space.insert(v) {
            self.complement = None;
            let corank = self.ambient - self.space.rank();
            if corank <= COMPLEMENT_CACHE_THRESHOLD {
                self.complement =
                    Some(linalg::nullspace(&self.space.dense_rows(), self.ambient));
            }
        }
    }
}

fn all_words(d: usize) -> Vec<Word> {
    let mut out = Vec::with_capacity(3usize.pow(d as u32));
    let mut w = vec![0u8; d];
    loop {
        out.push(Word(w.clone()));
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if w[i] + 1 < N_GENS as u8 {
                w[i] += 1;
                break;
            }
            w[i] = 0;
        }
    }
}

/// Rank of the evaluation matrix of all `3^d` multilinear monomials on the
/// component grids: the dimension of `B_d` computed with no input from the
/// closed form. Degree 1 evaluates linear forms on coordinate points of the
/// plane.
pub fn dim_b_oracle<K: Scalar>(
    ctx: &K::Ctx,
    d: usize,
    bound: usize,
) -> Result<usize, PpringError> {
    if d > bound {
        return Err(PpringError::DegreeOverBound { degree: d, bound });
    }
    assert!(d >= 1, "degree 0 has nothing to evaluate");
    if d == 1 {
        let pts: Vec<ProjPoint<K>> = (0..3)
            .map(|i| {
                let zero = || K::from_int(ctx, 0);
                let mut c = [zero(), zero(), zero()];
                c[i] = K::from_int(ctx, 1);
                ProjPoint::new(c).expect("coordinate point")
            })
            .collect();
        let rows: Vec<Vec<K>> = pts
            .iter()
            .map(|p| vec![p.coord(0).clone(), p.coord(1).clone(), p.coord(2).clone()])
            .collect();
        return Ok(linalg::rank(&rows));
    }
    let grids = component_grids::<K>(ctx, d)?;
    let ambient: usize = grids.iter().map(|g| g.tuples.len()).sum();
    let mut acc = RankAccumulator::new(ambient);
    for w in all_words(d) {
        acc.add(word_column(&w, &grids));
    }
    Ok(acc.rank())
}

/// The glue system for degree `d`: one row per singular point, over the
/// direct sum of the components' grid-value spaces. A per-component section
/// tuple descends to the disjoint union exactly when it satisfies these six
/// equations.
pub fn glue_system<K: Scalar>(
    ctx: &K::Ctx,
    d: usize,
) -> Result<(Vec<Vec<K>>, usize), PpringError> {
    let grids = component_grids::<K>(ctx, d)?;
    let offsets: Vec<usize> = grids
        .iter()
        .scan(0usize, |acc, g| {
            let o = *acc;
            *acc += g.tuples.len();
            Some(o)
        })
        .collect();
    let ambient: usize = grids.iter().map(|g| g.tuples.len()).sum();

    // Weight vector for evaluating a section of `grid` at the singular
    // tuple which puts the fixed point `even` on even slots and `odd` on
    // odd slots: multilinear interpolation with per-line-slot parameters
    // (zeta^label, zeta^{2 label}) for the fixed point the slot carries.
    let weights = |grid: &Grid<K>, even: u8, odd: u8| -> Result<Vec<K>, PpringError> {
        let line_labels: Vec<u8> = grid
            .spec
            .slots
            .iter()
            .enumerate()
            .filter_map(|(i, s)| match s {
                Slot::Line(_) => Some(if i % 2 == 0 { even } else { odd }),
                Slot::Point(_) => None,
            })
            .collect();
        let l = line_labels.len();
        let mut w = Vec::with_capacity(1 << l);
        for mask in 0..(1usize << l) {
            let mut prod = K::one();
            for (j, label) in line_labels.iter().enumerate() {
                let factor = if mask >> j & 1 == 0 {
                    zeta_power::<K>(ctx, *label)?
                } else {
                    zeta_power::<K>(ctx, 2 * label)?
                };
                prod = prod * factor;
            }
            w.push(prod);
        }
        Ok(w)
    };

    let mut rows = Vec::with_capacity(6);
    for sp in singular_locus(d) {
        let (i, j) = sp.component_indices();
        let mut row = vec![K::zero(); ambient];
        for (idx, sign_plus) in [(i, true), (j, false)] {
            let gpos = idx - 1;
            let w = weights(&grids[gpos], sp.even, sp.odd)?;
            for (off, val) in w.into_iter().enumerate() {
                let v = if sign_plus { val } else { K::zero() - val };
                row[offsets[gpos] + off] = v;
            }
        }
        rows.push(row);
    }
    Ok((rows, ambient))
}

/// Rank of the glue system (6 when the singular conditions are independent).
pub fn glue_rank<K: Scalar>(ctx: &K::Ctx, d: usize) -> Result<usize, PpringError> {
    let (rows, _) = glue_system::<K>(ctx, d)?;
    Ok(linalg::rank(&rows))
}

/// Dimension of the space of per-component sections that agree at all six
/// singular points: the nullity of the glue system.
pub fn glued_section_dim<K: Scalar>(ctx: &K::Ctx, d: usize) -> Result<usize, PpringError> {
    let (rows, ambient) = glue_system::<K>(ctx, d)?;
    Ok(ambient - linalg::rank(&rows))
}

/// True when the normal words of degree `d` already span `B_d`: the
/// evaluation rank of the `3 * 2^{d-1}` normal-word columns equals
/// `dim_b(d)`. This is the finite content of generation in degree one.
pub fn check_degree_one_generation<K: Scalar>(
    ctx: &K::Ctx,
    rs: &RewriteSystem<K>,
    d: usize,
) -> Result<bool, PpringError> {
    assert!(d >= 1);
    if d == 1 {
        return Ok(true);
    }
    let grids = component_grids::<K>(ctx, d)?;
    let ambient: usize = grids.iter().map(|g| g.tuples.len()).sum();
    let mut acc = RankAccumulator::new(ambient);
    for w in rs.normal_words(d)? {
        acc.add(word_column(&w, &grids));
    }
    Ok(acc.rank() as u64 == dim_b(d))
}

/// A basis of `K_d`, the kernel of evaluation on `V_d`, in normal-word
/// coordinates of the completed rewrite system. The count must come out as
/// `dim S_d - dim B_d`; anything else would contradict surjectivity onto
/// `B_d` and is reported as a panic rather than papered over.
pub fn kernel_basis<K: Scalar>(
    ctx: &K::Ctx,
    rs: &RewriteSystem<K>,
    d: usize,
) -> Result<Vec<NcPoly<K>>, PpringError> {
    assert!(d >= 1);
    let words = rs.normal_words(d)?;
    if d == 1 {
        return Ok(Vec::new());
    }
    let grids = component_grids::<K>(ctx, d)?;
    let mut rows: Vec<Vec<K>> = Vec::new();
    for g in &grids {
        for t in &g.tuples {
            rows.push(words.iter().map(|w| eval_word_on_tuple(w, t)).collect());
        }
    }
    let null = linalg::nullspace(&rows, words.len());
    let dim_s = words.len() as u64;
    assert_eq!(
        null.len() as u64,
        dim_s - dim_b(d),
        "kernel dimension must equal dim S_d - dim B_d"
    );
    let mut basis = Vec::with_capacity(null.len());
    for vec in null {
        let mut p = NcPoly::zero_poly();
        for (w, c) in words.iter().zip(vec) {
            if !c.is_zero() {
                p.add_term(w.clone(), c);
            }
        }
        basis.push(p);
    }
    Ok(basis)
}

/// Dimension of the span of all degree-one multiples (both sides) of the
/// given kernel elements, inside the normal-word coordinates one degree up.
/// Comparing it with `dim K_{d+1}` counts how many kernel elements are not
/// explained by the ideal generated so far.
pub fn degree_one_multiples_dim<K: Scalar>(
    rs: &RewriteSystem<K>,
    basis: &[NcPoly<K>],
    target_degree: usize,
) -> Result<usize, PpringError> {
    let words = rs.normal_words(target_degree)?;
    let index: std::collections::BTreeMap<&Word, usize> =
        words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut space = RowSpace::new(words.len());
    for kappa in basis {
        for g in 0..N_GENS as u8 {
            let gen_poly: NcPoly<K> = NcPoly::gen(g);
            for prod in [
                crate::freealg::nc_multiply(&gen_poly, kappa),
                crate::freealg::nc_multiply(kappa, &gen_poly),
            ] {
                let nf = rs.normal_form(&prod)?;
                let mut row = vec![K::zero(); words.len()];
                for (w, c) in nf.iter() {
                    row[*index.get(w).expect("normal form uses normal words")] = c.clone();
                }
                space.insert(row);
            }
        }
    }
    Ok(space.rank())
}

/// Comparison of the closed-form dimensions against the Taylor expansion of
/// `(1+t^2)(1+2t) / ((1-2t^2)(1-t))`, with growth diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesReport {
    pub dims: Vec<u64>,
    pub series: Vec<u64>,
    pub series_match: bool,
    /// dim B_{d+2} = 2 dim B_d + 6 for every d >= 1 in range (the exact
    /// form of the doubling growth; the literal ratio only tends to 2).
    pub even_step_recurrence: bool,
    /// dim B_{d+2} / dim B_d for d = 1..
    pub growth_ratios: Vec<f64>,
    /// (dim B_d)^{1/d}, approaching sqrt(2).
    pub root_growth: Vec<f64>,
}

/// Expand the printed rational series for `H_B` to degree `max_d` and
/// compare with [`dim_b`].
pub fn hilbert_series_report(max_d: usize) -> SeriesReport {
    assert!(max_d >= 4);
    let dims: Vec<u64> = (0..=max_d).map(dim_b).collect();
    // numerator (1+t^2)(1+2t) = 1 + 2t + t^2 + 2t^3 against denominator
    // (1-2t^2)(1-t) = 1 - t - 2t^2 + 2t^3:
    // H_d = num_d + H_{d-1} + 2 H_{d-2} - 2 H_{d-3}.
    let num = [1i128, 2, 1, 2];
    let mut series_i: Vec<i128> = Vec::with_capacity(max_d + 1);
    for d in 0..=max_d {
        let mut v = if d < 4 { num[d] } else { 0 };
        if d >= 1 {
            v += series_i[d - 1];
        }
        if d >= 2 {
            v += 2 * series_i[d - 2];
        }
        if d >= 3 {
            v -= 2 * series_i[d - 3];
        }
        series_i.push(v);
    }
    let series: Vec<u64> = series_i.iter().map(|v| *v as u64).collect();
    let series_match = dims == series;
    let even_step_recurrence =
        (1..=max_d.saturating_sub(2)).all(|d| dim_b(d + 2) == 2 * dim_b(d) + 6);
    let growth_ratios: Vec<f64> = (1..=max_d.saturating_sub(2))
        .map(|d| dim_b(d + 2) as f64 / dim_b(d) as f64)
        .collect();
    let root_growth: Vec<f64> =
        (1..=max_d).map(|d| (dim_b(d) as f64).powf(1.0 / d as f64)).collect();
    SeriesReport { dims, series, series_match, even_step_recurrence, growth_ratios, root_growth }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::sklyanin_presentation;
    use crate::geometry::forms_vanish;
    use crate::rewrite::{complete_to_degree, MonomialOrder};
    use crate::scalars::{Fp, QZeta3};
    use num_traits::Zero;

    fn s111_system(d: usize) -> RewriteSystem<QZeta3> {
        let one = QZeta3::int(1);
        let pres = sklyanin_presentation(&one, &one, &one).unwrap();
        complete_to_degree(&pres, MonomialOrder::default(), d)
    }

    #[test]
    fn closed_form_values() {
        let expected = [1u64, 3, 6, 12, 18, 30, 42, 66, 90, 138, 186];
        for (d, e) in expected.iter().enumerate() {
            assert_eq!(dim_b(d), *e, "d = {d}");
        }
    }

    #[test]
    fn grids_have_expected_shape_and_satisfy_relations() {
        let grids = component_grids::<QZeta3>(&(), 4).unwrap();
        assert_eq!(grids.len(), 6);
        let one = QZeta3::int(1);
        let pres = sklyanin_presentation(&one, &one, &one).unwrap();
        for g in &grids {
            assert_eq!(g.tuples.len(), 1 << g.spec.line_slots());
            for t in &g.tuples {
                assert!(forms_vanish(&pres, t));
            }
        }
        // d = 4: every component alternates two lines and two points.
        assert!(grids.iter().all(|g| g.tuples.len() == 4));
    }

    #[test]
    fn oracle_matches_closed_form_small_degrees() {
        for d in 1..=5usize {
            let r = dim_b_oracle::<QZeta3>(&(), d, DEFAULT_ORACLE_BOUND).unwrap();
            assert_eq!(r as u64, dim_b(d), "qzeta d = {d}");
        }
        for d in 1..=5usize {
            let r = dim_b_oracle::<Fp>(&7, d, DEFAULT_ORACLE_BOUND).unwrap();
            assert_eq!(r as u64, dim_b(d), "f7 d = {d}");
        }
    }

    #[test]
    fn oracle_bound_is_enforced() {
        match dim_b_oracle::<Fp>(&7, 9, 8) {
            Err(PpringError::DegreeOverBound { degree: 9, bound: 8 }) => {}
            other => panic!("expected bound error, got {other:?}"),
        }
    }

    #[test]
    fn glue_rows_are_independent_and_cut_six() {
        for d in 2..=6usize {
            assert_eq!(glue_rank::<QZeta3>(&(), d).unwrap(), 6, "d = {d}");
            assert_eq!(glued_section_dim::<QZeta3>(&(), d).unwrap() as u64, dim_b(d), "d = {d}");
        }
    }

    #[test]
    fn generation_in_degree_one_small() {
        let rs = s111_system(6);
        for d in 1..=6usize {
            assert!(check_degree_one_generation(&(), &rs, d).unwrap(), "d = {d}");
        }
    }

    #[test]
    fn kernel_dimensions_and_ideality() {
        let rs = s111_system(5);
        for d in 1..=3usize {
            assert!(kernel_basis(&(), &rs, d).unwrap().is_empty(), "d = {d}");
        }
        let k4 = kernel_basis(&(), &rs, 4).unwrap();
        assert_eq!(k4.len(), 6);
        let grids4 = component_grids::<QZeta3>(&(), 4).unwrap();
        for kappa in &k4 {
            assert!(!kappa.is_zero());
            for g in &grids4 {
                for t in &g.tuples {
                    assert!(eval_poly_on_tuple(kappa, t).is_zero());
                }
            }
        }
        let k5 = kernel_basis(&(), &rs, 5).unwrap();
        assert_eq!(k5.len(), 18);

        // Degree-one multiples of K4 land inside the degree-5 kernel.
        let grids5 = component_grids::<QZeta3>(&(), 5).unwrap();
        for kappa in &k4 {
            for g in 0..3u8 {
                let gp: NcPoly<QZeta3> = NcPoly::gen(g);
                for prod in [
                    crate::freealg::nc_multiply(&gp, kappa),
                    crate::freealg::nc_multiply(kappa, &gp),
                ] {
                    let nf = rs.normal_form(&prod).unwrap();
                    for grid in &grids5 {
                        for t in &grid.tuples {
                            assert!(eval_poly_on_tuple(&nf, t).is_zero());
                        }
                    }
                }
            }
        }

        let mult_dim = degree_one_multiples_dim(&rs, &k4, 5).unwrap();
        assert!(mult_dim <= 18);
        println!(
            "kernel: dim K5 = 18, degree-one multiples of K4 span {mult_dim}, \
             new generators in degree 5: {}",
            18 - mult_dim
        );
    }

    #[test]
    fn non_domain_witness() {
        let one = QZeta3::int(1);
        let sum: NcPoly<QZeta3> =
            NcPoly::gen(0) + NcPoly::gen(1) + NcPoly::gen(2);
        // Nonzero image in B_1: evaluate at a plane point.
        let p = ProjPoint::from_ints(&(), [1, 0, 0]).unwrap();
        assert_eq!(eval_poly_on_tuple(&sum, &[p]), one);
        // The 9-term square evaluates to zero on every V_2 grid tuple.
        let square = crate::freealg::nc_multiply(&sum, &sum);
        assert_eq!(square.num_terms(), 9);
        for g in component_grids::<QZeta3>(&(), 2).unwrap() {
            for t in &g.tuples {
                assert!(eval_poly_on_tuple(&square, t).is_zero());
            }
        }
    }

    #[test]
    fn evaluation_is_multiplicative() {
        let grids = component_grids::<QZeta3>(&(), 5).unwrap();
        let u = Word(vec![0, 2]);
        let v = Word(vec![1, 0, 2]);
        let uv = u.concat(&v);
        for g in &grids {
            for t in &g.tuples {
                let lhs = eval_word_on_tuple(&uv, t);
                let rhs = eval_word_on_tuple(&u, &t[..2]) * eval_word_on_tuple(&v, &t[2..]);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn series_report() {
        let r = hilbert_series_report(12);
        assert!(r.series_match);
        assert!(r.even_step_recurrence);
        assert_eq!(r.series[..7], [1, 3, 6, 12, 18, 30, 42]);
        assert_eq!(r.dims[10], 186);
        assert_eq!(r.dims[12], 378);
        // Ratios drift toward 2 without reaching it; the per-degree roots
        // decrease monotonically toward sqrt(2) from above.
        let last = *r.growth_ratios.last().unwrap();
        assert!((last - 2.0).abs() < 0.2);
        for pair in r.root_growth.windows(2) {
            assert!(pair[1] < pair[0]);
        }
        assert!(*r.root_growth.last().unwrap() > std::f64::consts::SQRT_2);
    }
}
