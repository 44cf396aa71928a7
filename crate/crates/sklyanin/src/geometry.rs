//! Truncated point-scheme geometry of the degenerate Sklyanin algebras:
//! multilinearized relations, the 3x3 step matrix and its determinant curve,
//! the rank-1 point sets, the six-component decomposition for `S(1,1,1)`,
//! singular points, and exact enumeration over prime fields.

use crate::freealg::{Gen, QuadPresentation};
use crate::linalg;
use crate::scalars::{Fp, Scalar};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("the zero triple is not a projective point")]
    ZeroPoint,
    #[error("the coefficient field has no primitive cube root of unity")]
    NoCubeRoot,
    #[error("point {0} is not on the curve E (the step matrix is invertible)")]
    NotOnCurve(String),
    #[error("component tables are implemented for S(1,1,1) only; {0} is handled through its twist")]
    NotImplemented(String),
    #[error("relations must be quadratic on three generators")]
    BadPresentation,
}

/// A point of the projective plane, stored normalized: the first nonzero
/// coordinate is scaled to 1, so equality of values is projective equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjPoint<K: Scalar> {
    coords: [K; 3],
}

impl<K: Scalar> ProjPoint<K> {
    pub fn new(coords: [K; 3]) -> Result<Self, GeometryError> {
        let lead = coords.iter().position(|c| !c.is_zero()).ok_or(GeometryError::ZeroPoint)?;
        let inv = coords[lead].inv().expect("nonzero");
        let normalized = coords.map(|c| c * inv.clone());
        Ok(ProjPoint { coords: normalized })
    }

    pub fn from_ints(ctx: &K::Ctx, coords: [i64; 3]) -> Result<Self, GeometryError> {
        ProjPoint::new(coords.map(|n| K::from_int(ctx, n)))
    }

    pub fn coord(&self, g: Gen) -> &K {
        &self.coords[g as usize]
    }

    pub fn coords(&self) -> &[K; 3] {
        &self.coords
    }
}

impl<K: Scalar> fmt::Display for ProjPoint<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.coords[0], self.coords[1], self.coords[2])
    }
}

impl ProjPoint<Fp> {
    /// Residue triple of the normalized representative, usable as a set key.
    pub fn key(&self) -> [u64; 3] {
        [self.coords[0].residue(), self.coords[1].residue(), self.coords[2].residue()]
    }
}

/// All points of the projective plane over `F_p`, in a fixed order.
pub fn projective_plane(p: u64) -> Vec<ProjPoint<Fp>> {
    let mut pts = Vec::with_capacity((p * p + p + 1) as usize);
    for b in 0..p {
        for c in 0..p {
            pts.push(
                ProjPoint::new([Fp::new(p, 1), Fp::new(p, b as i64), Fp::new(p, c as i64)])
                    .unwrap(),
            );
        }
    }
    for c in 0..p {
        pts.push(ProjPoint::new([Fp::new(p, 0), Fp::new(p, 1), Fp::new(p, c as i64)]).unwrap());
    }
    pts.push(ProjPoint::new([Fp::new(p, 0), Fp::new(p, 0), Fp::new(p, 1)]).unwrap());
    pts
}

/// A form on a product of projective planes that is linear in each of the
/// factors it touches. Terms map a sparse support (factor index, generator)
/// to a coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultilinearForm<K: Scalar> {
    pub arity: usize,
    terms: BTreeMap<Vec<(usize, Gen)>, K>,
}

impl<K: Scalar> MultilinearForm<K> {
    pub fn eval(&self, pts: &[ProjPoint<K>]) -> K {
        assert_eq!(pts.len(), self.arity);
        let mut acc = K::zero();
        for (support, c) in &self.terms {
            let mut prod = c.clone();
            for (factor, g) in support {
                prod = prod * pts[*factor].coord(*g).clone();
            }
            acc = acc + prod;
        }
        acc
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
}

/// Multilinearize the quadratic relations across `d` consecutive factors:
/// each relation yields one form per adjacent pair `(i, i+1)`, with the
/// first letter of every word evaluating at the later factor (the module
/// action reads right to left).
pub fn multilinearize<K: Scalar>(
    p: &QuadPresentation<K>,
    d: usize,
) -> Vec<MultilinearForm<K>> {
    assert!(d >= 2, "multilinearization needs at least two factors");
    let mut forms = Vec::with_capacity(3 * (d - 1));
    for i in 0..d - 1 {
        for r in p.relations() {
            let mut terms = BTreeMap::new();
            for (w, c) in r.iter() {
                debug_assert_eq!(w.degree(), 2);
                let support = vec![(i, w.0[1]), (i + 1, w.0[0])];
                terms.insert(support, c.clone());
            }
            forms.push(MultilinearForm { arity: d, terms });
        }
    }
    forms
}

/// True when every multilinearized relation vanishes on the tuple.
pub fn forms_vanish<K: Scalar>(p: &QuadPresentation<K>, tuple: &[ProjPoint<K>]) -> bool {
    multilinearize(p, tuple.len()).iter().all(|f| f.eval(tuple).is_zero())
}

/// The step matrix of `S(a,b,c)` at `p`:
/// rows `(c x, a z, b y; b z, c y, a x; a y, b x, c z)` evaluated at `p`.
/// A successor `q` of `p` is exactly a kernel vector of this matrix.
pub fn m_matrix<K: Scalar>(a: &K, b: &K, c: &K, p: &ProjPoint<K>) -> [[K; 3]; 3] {
    let (x, y, z) = (p.coord(0), p.coord(1), p.coord(2));
    [
        [c.clone() * x.clone(), a.clone() * z.clone(), b.clone() * y.clone()],
        [b.clone() * z.clone(), c.clone() * y.clone(), a.clone() * x.clone()],
        [a.clone() * y.clone(), b.clone() * x.clone(), c.clone() * z.clone()],
    ]
}

pub fn matrix_rank<K: Scalar>(m: &[[K; 3]; 3]) -> usize {
    linalg::rank(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

/// The constraint matrix on successors of `p` for an arbitrary quadratic
/// presentation: row per relation, N[r][u] = sum_v coeff(u v) * v(p), so a
/// successor q satisfies N(p) q = 0. For the Sklyanin family this is
/// [`m_matrix`] with rows in relation order.
pub fn successor_matrix<K: Scalar>(
    pres: &QuadPresentation<K>,
    p: &ProjPoint<K>,
) -> Vec<[K; 3]> {
    pres.relations()
        .iter()
        .map(|r| {
            let mut row = [K::zero(), K::zero(), K::zero()];
            for (w, c) in r.iter() {
                let (u, v) = (w.0[0], w.0[1]);
                row[u as usize] =
                    row[u as usize].clone() + c.clone() * p.coord(v).clone();
            }
            row
        })
        .collect()
}

/// The constraint matrix on predecessors of `q`: row per relation,
/// P[r][v] = sum_u coeff(u v) * u(q); a predecessor p satisfies P(q) p = 0.
pub fn predecessor_matrix<K: Scalar>(
    pres: &QuadPresentation<K>,
    q: &ProjPoint<K>,
) -> Vec<[K; 3]> {
    pres.relations()
        .iter()
        .map(|r| {
            let mut row = [K::zero(), K::zero(), K::zero()];
            for (w, c) in r.iter() {
                let (u, v) = (w.0[0], w.0[1]);
                row[v as usize] =
                    row[v as usize].clone() + c.clone() * q.coord(u).clone();
            }
            row
        })
        .collect()
}

/// The cubic cutting out `E`: `(a^3+b^3+c^3) xyz - abc (x^3+y^3+z^3)`.
/// This equals `det m_matrix` on the nose.
pub fn e_cubic<K: Scalar>(a: &K, b: &K, c: &K, p: &ProjPoint<K>) -> K {
    let cube = |s: &K| s.clone() * s.clone() * s.clone();
    let (x, y, z) = (p.coord(0), p.coord(1), p.coord(2));
    let sum_cubes = cube(a) + cube(b) + cube(c);
    let abc = a.clone() * b.clone() * c.clone();
    sum_cubes * (x.clone() * y.clone() * z.clone())
        - abc * (cube(x) + cube(y) + cube(z))
}

/// Membership of `p` in `E`, computed from the cubic and cross-checked
/// against the determinant of the step matrix.
pub fn on_curve_e<K: Scalar>(a: &K, b: &K, c: &K, p: &ProjPoint<K>) -> bool {
    let cubic = e_cubic(a, b, c, p);
    let det = linalg::det3(&m_matrix(a, b, c, p));
    assert_eq!(cubic, det, "determinant of the step matrix must equal the E cubic");
    cubic.is_zero()
}

// ---- cube-root points, lines, and the Z sets ----

/// `zeta^k` for k = 0, 1, 2. Needs a cube root in the field only for
/// nonzero exponents.
pub fn zeta_power<K: Scalar>(ctx: &K::Ctx, k: u8) -> Result<K, GeometryError> {
    match k % 3 {
        0 => Ok(K::from_int(ctx, 1)),
        1 => K::zeta(ctx).ok_or(GeometryError::NoCubeRoot),
        _ => {
            let zeta = K::zeta(ctx).ok_or(GeometryError::NoCubeRoot)?;
            Ok(zeta.clone() * zeta)
        }
    }
}

/// The fixed point `[1 : zeta^k : zeta^{2k}]`.
pub fn fixed_point<K: Scalar>(ctx: &K::Ctx, k: u8) -> Result<ProjPoint<K>, GeometryError> {
    let w = zeta_power::<K>(ctx, k)?;
    let w2 = zeta_power::<K>(ctx, 2 * k)?;
    ProjPoint::new([K::from_int(ctx, 1), w, w2])
}

/// The line `x + zeta^{2k} y + zeta^k z = 0` that pairs with
/// [`fixed_point`] `k` inside one component: the pencil of successors of the
/// fixed point, and the locus whose generic point has the fixed point as its
/// unique successor.
pub fn line_point<K: Scalar>(
    ctx: &K::Ctx,
    k: u8,
    s: &K,
    t: &K,
) -> Result<ProjPoint<K>, GeometryError> {
    let w = zeta_power::<K>(ctx, k)?;
    let w2 = zeta_power::<K>(ctx, 2 * k)?;
    let x = K::zero() - (w2 * s.clone() + w * t.clone());
    ProjPoint::new([x, s.clone(), t.clone()]).map_err(|_| GeometryError::ZeroPoint)
}

/// Membership of `p` on the component line with label `k`.
pub fn on_line<K: Scalar>(ctx: &K::Ctx, k: u8, p: &ProjPoint<K>) -> Result<bool, GeometryError> {
    let w = zeta_power::<K>(ctx, k)?;
    let w2 = zeta_power::<K>(ctx, 2 * k)?;
    let v = p.coord(0).clone() + w2 * p.coord(1).clone() + w * p.coord(2).clone();
    Ok(v.is_zero())
}

/// The rank-1 point sets of the four representatives:
/// `z_set(ctx, 1)` = Z1 for S(1,1,1), `z_set(ctx, 2)` = Z2 for S(1,1,zeta),
/// `z_set(ctx, 3)` = Z3 for S(1,zeta,zeta), `z_set(ctx, 0)` = Z0 (the
/// coordinate points) for S(1,0,0).
pub fn z_set<K: Scalar>(ctx: &K::Ctx, which: u8) -> Result<Vec<ProjPoint<K>>, GeometryError> {
    let zp = |k: u8| zeta_power::<K>(ctx, k);
    let pt = |a: K, b: K, c: K| ProjPoint::new([a, b, c]);
    let one = || K::from_int(ctx, 1);
    Ok(match which {
        0 => vec![
            ProjPoint::from_ints(ctx, [1, 0, 0])?,
            ProjPoint::from_ints(ctx, [0, 1, 0])?,
            ProjPoint::from_ints(ctx, [0, 0, 1])?,
        ],
        1 => vec![
            pt(one(), zp(0)?, zp(0)?)?,
            pt(one(), zp(1)?, zp(2)?)?,
            pt(one(), zp(2)?, zp(1)?)?,
        ],
        2 => vec![
            pt(one(), zp(0)?, zp(1)?)?,
            pt(one(), zp(1)?, zp(0)?)?,
            pt(one(), zp(2)?, zp(2)?)?,
        ],
        3 => vec![
            pt(one(), zp(1)?, zp(1)?)?,
            pt(one(), zp(0)?, zp(2)?)?,
            pt(one(), zp(2)?, zp(0)?)?,
        ],
        _ => panic!("z_set index must be 0..=3"),
    })
}

// ---- components of V_d for S(1,1,1) ----

/// One slot of a component pattern.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Slot {
    /// The line with label `zeta^k` (see [`line_point`]).
    Line(u8),
    /// The fixed point `[1 : zeta^k : zeta^{2k}]`.
    Point(u8),
}

/// An alternating component `W_{d,i}` of the truncated point scheme: `d`
/// slots, strictly alternating between a line and its companion fixed point,
/// with one `zeta` label carried by the whole component.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComponentSpec {
    /// 1-based index, matching `W_{d,1}..W_{d,6}`.
    pub index: usize,
    pub slots: Vec<Slot>,
}

impl ComponentSpec {
    pub fn line_slots(&self) -> usize {
        self.slots.iter().filter(|s| matches!(s, Slot::Line(_))).count()
    }

    pub fn label(&self) -> u8 {
        match self.slots[0] {
            Slot::Line(k) | Slot::Point(k) => k,
        }
    }

    pub fn starts_with_line(&self) -> bool {
        matches!(self.slots[0], Slot::Line(_))
    }

    /// Membership of a coordinate tuple.
    pub fn contains<K: Scalar>(
        &self,
        ctx: &K::Ctx,
        tuple: &[ProjPoint<K>],
    ) -> Result<bool, GeometryError> {
        if tuple.len() != self.slots.len() {
            return Ok(false);
        }
        for (slot, p) in self.slots.iter().zip(tuple) {
            let ok = match slot {
                Slot::Line(k) => on_line(ctx, *k, p)?,
                Slot::Point(k) => *p == fixed_point::<K>(ctx, *k)?,
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All `F_p` points of the component.
    pub fn points_mod_p(&self, p: u64) -> Vec<Vec<ProjPoint<Fp>>> {
        let ctx = p;
        let line_params: Vec<(Fp, Fp)> = {
            let mut ps: Vec<(Fp, Fp)> = (0..p).map(|t| (Fp::new(p, 1), Fp::new(p, t as i64))).collect();
            ps.push((Fp::new(p, 0), Fp::new(p, 1)));
            ps
        };
        let mut tuples: Vec<Vec<ProjPoint<Fp>>> = vec![Vec::new()];
        for slot in &self.slots {
            let choices: Vec<ProjPoint<Fp>> = match slot {
                Slot::Point(k) => vec![fixed_point::<Fp>(&ctx, *k).expect("p = 1 mod 3")],
                Slot::Line(k) => line_params
                    .iter()
                    .map(|(s, t)| line_point::<Fp>(&ctx, *k, s, t).expect("projective param"))
                    .collect(),
            };
            let mut next = Vec::with_capacity(tuples.len() * choices.len());
            for t in &tuples {
                for c in &choices {
                    let mut t2 = t.clone();
                    t2.push(c.clone());
                    next.push(t2);
                }
            }
            tuples = next;
        }
        tuples
    }
}

fn is_s111<K: Scalar>(params: Option<&(K, K, K)>) -> bool {
    match params {
        Some((a, b, c)) => a.is_one() && b.is_one() && c.is_one(),
        None => false,
    }
}

/// The six alternating components of `V_d` for `S(1,1,1)`: for each label
/// `k`, one component starting with the line and one starting with the fixed
/// point. Other representatives are reached through their twists and signal
/// not-implemented here.
pub fn component_specs<K: Scalar>(
    pres: &QuadPresentation<K>,
    d: usize,
) -> Result<Vec<ComponentSpec>, GeometryError> {
    assert!(d >= 2, "components are defined for d >= 2");
    if !is_s111(pres.params()) {
        let desc = match pres.params() {
            Some((a, b, c)) => format!("S({a}, {b}, {c})"),
            None => "a non-family presentation".to_string(),
        };
        return Err(GeometryError::NotImplemented(desc));
    }
    let mut specs = Vec::with_capacity(6);
    for k in 0..3u8 {
        for start_with_line in [true, false] {
            let slots: Vec<Slot> = (0..d)
                .map(|i| {
                    if (i % 2 == 0) == start_with_line {
                        Slot::Line(k)
                    } else {
                        Slot::Point(k)
                    }
                })
                .collect();
            let index = 2 * k as usize + if start_with_line { 1 } else { 2 };
            specs.push(ComponentSpec { index, slots });
        }
    }
    specs.sort_by_key(|s| s.index);
    Ok(specs)
}

// ---- the extension dichotomy for S(1,1,1) ----

/// Successors of a point on `E` for `S(1,1,1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Extension<K: Scalar> {
    /// Rank 2: a unique successor, always one of the three fixed points.
    Unique(ProjPoint<K>),
    /// Rank 1 (p is a fixed point): the full pencil `[theta(y,z) : y : z]`
    /// with `theta = -(zeta^{2k} y + zeta^k z)`, i.e. the component line `k`.
    Pencil { label: u8, theta_y: K, theta_z: K },
}

/// The successor structure of `p in E` under `S(1,1,1)`: unique successor
/// off the fixed points, a pencil at them. Points off `E` have none.
pub fn extend_point<K: Scalar>(
    ctx: &K::Ctx,
    p: &ProjPoint<K>,
) -> Result<Extension<K>, GeometryError> {
    let one = K::from_int(ctx, 1);
    let m = m_matrix(&one, &one, &one, p);
    let rows: Vec<Vec<K>> = m.iter().map(|r| r.to_vec()).collect();
    match linalg::rank(&rows) {
        3 => Err(GeometryError::NotOnCurve(p.to_string())),
        2 => {
            let kernel = linalg::nullspace(&rows, 3);
            debug_assert_eq!(kernel.len(), 1);
            let q = ProjPoint::new([kernel[0][0].clone(), kernel[0][1].clone(), kernel[0][2].clone()])?;
            if let Ok(zs) = z_set::<K>(ctx, 1) {
                debug_assert!(zs.contains(&q), "unique successor must be a fixed point");
            }
            Ok(Extension::Unique(q))
        }
        1 => {
            let label = (0..3u8)
                .find(|k| fixed_point::<K>(ctx, *k).map(|f| f == *p).unwrap_or(false))
                .expect("rank-1 points of S(1,1,1) are the fixed points");
            let w = zeta_power::<K>(ctx, label)?;
            let w2 = zeta_power::<K>(ctx, 2 * label)?;
            Ok(Extension::Pencil {
                label,
                theta_y: K::zero() - w2,
                theta_z: K::zero() - w,
            })
        }
        r => unreachable!("step matrix of a plane point has rank 1..=3, got {r}"),
    }
}

// ---- the singular locus ----

/// One of the six singular points of `V_d`: the alternating tuple whose even
/// slots are the fixed point `even` and odd slots the fixed point `odd`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SingularPoint {
    pub even: u8,
    pub odd: u8,
}

impl SingularPoint {
    pub fn realize<K: Scalar>(
        &self,
        ctx: &K::Ctx,
        d: usize,
    ) -> Result<Vec<ProjPoint<K>>, GeometryError> {
        (0..d)
            .map(|i| fixed_point::<K>(ctx, if i % 2 == 0 { self.even } else { self.odd }))
            .collect()
    }

    /// Indices (1-based) of the two components containing the point: the
    /// point-start component of `even` and the line-start component of `odd`.
    pub fn component_indices(&self) -> (usize, usize) {
        let point_start = 2 * self.even as usize + 2;
        let line_start = 2 * self.odd as usize + 1;
        if line_start < point_start { (line_start, point_start) } else { (point_start, line_start) }
    }
}

/// The six singular points, as ordered label pairs (even, odd).
pub fn singular_locus(d: usize) -> Vec<SingularPoint> {
    assert!(d >= 2);
    let mut out = Vec::with_capacity(6);
    for even in 0..3u8 {
        for odd in 0..3u8 {
            if even != odd {
                out.push(SingularPoint { even, odd });
            }
        }
    }
    out
}

// ---- enumeration over prime fields ----

/// Projective kernel points of a 3x3 system over `F_p`.
fn kernel_points(rows: &[[Fp; 3]], p: u64) -> Vec<ProjPoint<Fp>> {
    let dense: Vec<Vec<Fp>> = rows.iter().map(|r| r.to_vec()).collect();
    let basis = linalg::nullspace(&dense, 3);
    match basis.len() {
        0 => Vec::new(),
        1 => vec![ProjPoint::new([basis[0][0], basis[0][1], basis[0][2]]).expect("nonzero")],
        k => {
            // Enumerate the projectivization of a k-dimensional space.
            let mut seen: BTreeMap<[u64; 3], ProjPoint<Fp>> = BTreeMap::new();
            let mut coeffs = vec![0u64; k];
            loop {
                if coeffs.iter().any(|c| *c != 0) {
                    let mut v = [Fp::new(p, 0); 3];
                    for (ci, b) in coeffs.iter().zip(basis.iter()) {
                        for (slot, bv) in v.iter_mut().zip(b.iter()) {
                            *slot = *slot + Fp::new(p, *ci as i64) * *bv;
                        }
                    }
                    if v.iter().any(|c| !c.is_zero()) {
                        let pt = ProjPoint::new(v).expect("nonzero");
                        seen.entry(pt.key()).or_insert(pt);
                    }
                }
                // Increment the coefficient vector in base p.
                let mut i = 0;
                loop {
                    if i == coeffs.len() {
                        return seen.into_values().collect();
                    }
                    coeffs[i] += 1;
                    if coeffs[i] < p {
                        break;
                    }
                    coeffs[i] = 0;
                    i += 1;
                }
            }
        }
    }
}

/// All `F_p` points of the truncated point scheme `V_d`, enumerated by chain
/// extension: seed points in the plane, successors from the kernel of the
/// step matrix at each stage. Never materializes the full product space.
pub fn enumerate_vd(
    pres: &QuadPresentation<Fp>,
    d: usize,
    p: u64,
) -> Vec<Vec<ProjPoint<Fp>>> {
    assert!(d >= 2, "V_d needs d >= 2");
    let plane = projective_plane(p);
    let mut chains: Vec<Vec<ProjPoint<Fp>>> = plane.into_iter().map(|pt| vec![pt]).collect();
    for _ in 1..d {
        let mut next = Vec::new();
        for chain in chains {
            let last = chain.last().expect("nonempty");
            let rows_vec = successor_matrix(pres, last);
            let rows: Vec<[Fp; 3]> = rows_vec;
            for q in kernel_points(&rows, p) {
                let mut c = chain.clone();
                c.push(q);
                next.push(c);
            }
        }
        chains = next;
    }
    chains.sort_by(|a, b| {
        let ka: Vec<[u64; 3]> = a.iter().map(|pt| pt.key()).collect();
        let kb: Vec<[u64; 3]> = b.iter().map(|pt| pt.key()).collect();
        ka.cmp(&kb)
    });
    chains
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::sklyanin_presentation;
    use crate::scalars::QZeta3;
    use num_rational::BigRational;

    type Q = BigRational;

    fn qi(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn zp(k: u8) -> QZeta3 {
        zeta_power::<QZeta3>(&(), k).unwrap()
    }

    fn s111_q() -> QuadPresentation<Q> {
        sklyanin_presentation(&qi(1), &qi(1), &qi(1)).unwrap()
    }

    #[test]
    fn multilinearize_shape_and_values() {
        let p = s111_q();
        let forms = multilinearize(&p, 2);
        assert_eq!(forms.len(), 3);
        assert!(forms.iter().all(|f| f.num_terms() == 3));
        assert_eq!(multilinearize(&p, 5).len(), 12);

        // f0 at (p, q) = y(q) z(p) + z(q) y(p) + x(q) x(p).
        let pt = |a, b, c| ProjPoint::from_ints(&(), [a, b, c]).unwrap();
        let f0 = &forms[0];
        let v = f0.eval(&[pt(1, 2, 3), pt(1, 5, 7)]);
        // 5*3 + 7*2 + 1*1 = 30
        assert_eq!(v, qi(30));
    }

    #[test]
    fn m_matrix_examples() {
        let one = qi(1);
        let p = ProjPoint::from_ints(&(), [1, 1, 1]).unwrap();
        let m = m_matrix(&one, &one, &one, &p);
        assert!(m.iter().all(|row| row.iter().all(|e| *e == qi(1))));
        assert_eq!(matrix_rank(&m), 1);

        let p100 = ProjPoint::from_ints(&(), [1, 0, 0]).unwrap();
        let m2 = m_matrix(&one, &one, &one, &p100);
        assert_eq!(linalg::det3(&m2), qi(-1));
        assert_eq!(matrix_rank(&m2), 3);
        assert!(!on_curve_e(&one, &one, &one, &p100));

        // Generic point of the label-0 line: rank 2.
        let t = qi(2);
        let lp = line_point::<Q>(&(), 0, &qi(1), &t).unwrap();
        assert_eq!(lp, ProjPoint::from_ints(&(), [-3, 1, 2]).unwrap());
        let m3 = m_matrix(&one, &one, &one, &lp);
        assert!(linalg::det3(&m3).is_zero());
        assert_eq!(matrix_rank(&m3), 2);
        assert!(on_curve_e(&one, &one, &one, &lp));
    }

    #[test]
    fn successor_matrix_agrees_with_m_matrix() {
        let p = s111_q();
        let pt = ProjPoint::from_ints(&(), [2, 3, 5]).unwrap();
        let n = successor_matrix(&p, &pt);
        let m = m_matrix(&qi(1), &qi(1), &qi(1), &pt);
        for (row_n, row_m) in n.iter().zip(m.iter()) {
            assert_eq!(row_n, row_m);
        }
    }

    #[test]
    fn three_definitions_of_incidence_agree() {
        let pres = s111_q();
        let pts = [
            ProjPoint::from_ints(&(), [1, -3, 2]).unwrap(),
            ProjPoint::from_ints(&(), [1, 1, 1]).unwrap(),
            ProjPoint::from_ints(&(), [1, 2, 3]).unwrap(),
            ProjPoint::from_ints(&(), [0, 1, -1]).unwrap(),
        ];
        for p in &pts {
            for q in &pts {
                let vanish = forms_vanish(&pres, &[p.clone(), q.clone()]);
                let succ = successor_matrix(&pres, p);
                let mv_zero = succ.iter().all(|row| {
                    let s = row[0].clone() * q.coord(0).clone()
                        + row[1].clone() * q.coord(1).clone()
                        + row[2].clone() * q.coord(2).clone();
                    s.is_zero()
                });
                let pred = predecessor_matrix(&pres, q);
                let pm_zero = pred.iter().all(|row| {
                    let s = row[0].clone() * p.coord(0).clone()
                        + row[1].clone() * p.coord(1).clone()
                        + row[2].clone() * p.coord(2).clone();
                    s.is_zero()
                });
                assert_eq!(vanish, mv_zero);
                assert_eq!(vanish, pm_zero);
            }
        }
    }

    #[test]
    fn monomial_case_curve_is_coordinate_triangle() {
        let (a, b, c) = (qi(1), qi(0), qi(0));
        let on = |x, y, z| on_curve_e(&a, &b, &c, &ProjPoint::from_ints(&(), [x, y, z]).unwrap());
        assert!(on(1, 0, 0));
        assert!(on(1, 5, 0));
        assert!(!on(1, 1, 1));
        assert!(!on(1, 2, 3));
    }

    #[test]
    fn extend_point_dichotomy() {
        // Generic line point extends uniquely to the companion fixed point.
        let lp = ProjPoint::from_ints(&(), [1, -3, 2]).unwrap();
        match extend_point::<Q>(&(), &lp).unwrap() {
            Extension::Unique(q) => assert_eq!(q, ProjPoint::from_ints(&(), [1, 1, 1]).unwrap()),
            other => panic!("expected unique extension, got {other:?}"),
        }

        // The fixed points open into their pencils.
        let p1 = fixed_point::<QZeta3>(&(), 0).unwrap();
        match extend_point::<QZeta3>(&(), &p1).unwrap() {
            Extension::Pencil { label: 0, theta_y, theta_z } => {
                assert_eq!(theta_y, QZeta3::int(-1));
                assert_eq!(theta_z, QZeta3::int(-1));
            }
            other => panic!("expected pencil, got {other:?}"),
        }
        let pz = fixed_point::<QZeta3>(&(), 1).unwrap();
        match extend_point::<QZeta3>(&(), &pz).unwrap() {
            Extension::Pencil { label: 1, theta_y, theta_z } => {
                // theta = -(zeta^2 y + zeta z)
                assert_eq!(theta_y, QZeta3::zero() - zp(2));
                assert_eq!(theta_z, QZeta3::zero() - zp(1));
            }
            other => panic!("expected pencil, got {other:?}"),
        }

        // Off the curve: no extension.
        let off = ProjPoint::from_ints(&(), [1, 0, 0]).unwrap();
        assert!(matches!(
            extend_point::<Q>(&(), &off),
            Err(GeometryError::NotOnCurve(_))
        ));
    }

    #[test]
    fn pencil_lies_on_component_line() {
        // Every point of the pencil after fixed point k is a successor and
        // sits on line k.
        for k in 0..3u8 {
            let fp = fixed_point::<QZeta3>(&(), k).unwrap();
            let m = m_matrix(&QZeta3::int(1), &QZeta3::int(1), &QZeta3::int(1), &fp);
            for (s, t) in [(1i64, 0i64), (0, 1), (1, 1), (2, -1)] {
                let q =
                    line_point::<QZeta3>(&(), k, &QZeta3::int(s), &QZeta3::int(t)).unwrap();
                for row in &m {
                    let v = row[0].clone() * q.coord(0).clone()
                        + row[1].clone() * q.coord(1).clone()
                        + row[2].clone() * q.coord(2).clone();
                    assert!(v.is_zero());
                }
                assert!(on_line::<QZeta3>(&(), k, &q).unwrap());
            }
        }
    }

    #[test]
    fn component_specs_shape() {
        let pz = sklyanin_presentation(&QZeta3::int(1), &QZeta3::int(1), &QZeta3::int(1)).unwrap();
        let specs = component_specs(&pz, 4).unwrap();
        assert_eq!(specs.len(), 6);
        // W1 = Line(0), Point(0), Line(0), Point(0).
        assert_eq!(
            specs[0].slots,
            vec![Slot::Line(0), Slot::Point(0), Slot::Line(0), Slot::Point(0)]
        );
        assert_eq!(specs[0].index, 1);
        assert!(specs[1].slots[0] == Slot::Point(0));
        // Odd d: three components have ceil(d/2) lines, three have floor.
        let specs3 = component_specs(&pz, 3).unwrap();
        let lines: Vec<usize> = specs3.iter().map(|s| s.line_slots()).collect();
        assert_eq!(lines.iter().filter(|l| **l == 2).count(), 3);
        assert_eq!(lines.iter().filter(|l| **l == 1).count(), 3);

        let other = sklyanin_presentation(&QZeta3::int(1), &QZeta3::int(1), &QZeta3::gen_zeta())
            .unwrap();
        assert!(matches!(
            component_specs(&other, 3),
            Err(GeometryError::NotImplemented(_))
        ));
    }

    #[test]
    fn components_satisfy_relations() {
        let pz = sklyanin_presentation(&QZeta3::int(1), &QZeta3::int(1), &QZeta3::int(1)).unwrap();
        for d in [2usize, 3, 4] {
            for spec in component_specs(&pz, d).unwrap() {
                // Sample the lines at a few parameters and check the forms.
                for (s, t) in [(1i64, 0i64), (0, 1), (3, 2)] {
                    let tuple: Vec<ProjPoint<QZeta3>> = spec
                        .slots
                        .iter()
                        .map(|slot| match slot {
                            Slot::Point(k) => fixed_point::<QZeta3>(&(), *k).unwrap(),
                            Slot::Line(k) => line_point::<QZeta3>(
                                &(),
                                *k,
                                &QZeta3::int(s),
                                &QZeta3::int(t),
                            )
                            .unwrap(),
                        })
                        .collect();
                    assert!(forms_vanish(&pz, &tuple), "component {} d {}", spec.index, d);
                }
            }
        }
    }

    #[test]
    fn singular_points_and_memberships() {
        let pz = sklyanin_presentation(&QZeta3::int(1), &QZeta3::int(1), &QZeta3::int(1)).unwrap();
        for d in 2..=6usize {
            let specs = component_specs(&pz, d).unwrap();
            let sing = singular_locus(d);
            assert_eq!(sing.len(), 6);
            for s in &sing {
                let tuple = s.realize::<QZeta3>(&(), d).unwrap();
                assert!(forms_vanish(&pz, &tuple));
                let members: Vec<usize> = specs
                    .iter()
                    .filter(|spec| spec.contains(&(), &tuple).unwrap())
                    .map(|spec| spec.index)
                    .collect();
                let (i, j) = s.component_indices();
                assert_eq!(members, vec![i, j], "singular ({}, {}) d {}", s.even, s.odd, d);
            }
        }
        // The first singular point of the ordering lands in W2 and W3.
        let first = singular_locus(2)[0];
        assert_eq!((first.even, first.odd), (0, 1));
        assert_eq!(first.component_indices(), (2, 3));
    }

    #[test]
    fn enumeration_over_f7_matches_components() {
        let p = 7u64;
        let one = Fp::new(p, 1);
        let pres = sklyanin_presentation(&one, &one, &one).unwrap();
        let v2 = enumerate_vd(&pres, 2, p);
        assert_eq!(v2.len(), 42);

        // Set equality with the component union.
        let pz = sklyanin_presentation(&one, &one, &one).unwrap();
        let specs = component_specs(&pz, 2).unwrap();
        let mut union: Vec<Vec<[u64; 3]>> = Vec::new();
        for spec in &specs {
            for t in spec.points_mod_p(p) {
                union.push(t.iter().map(|pt| pt.key()).collect());
            }
        }
        union.sort();
        union.dedup();
        let enumerated: Vec<Vec<[u64; 3]>> =
            v2.iter().map(|t| t.iter().map(|pt| pt.key()).collect()).collect();
        assert_eq!(union, enumerated);

        // Exactly six tuples lie on two components.
        let mut doubles = 0;
        for t in &v2 {
            let count = specs.iter().filter(|s| s.contains(&p, t).unwrap()).count();
            assert!(count == 1 || count == 2);
            if count == 2 {
                doubles += 1;
            }
        }
        assert_eq!(doubles, 6);
    }

    #[test]
    fn enumeration_counts_d3() {
        let p = 7u64;
        let one = Fp::new(p, 1);
        let pres = sklyanin_presentation(&one, &one, &one).unwrap();
        let v3 = enumerate_vd(&pres, 3, p);
        // 3 * 8^2 + 3 * 8 - 6
        assert_eq!(v3.len(), 210);
        for t in v3.iter().take(20) {
            assert!(forms_vanish(&pres, t));
        }
    }

    #[test]
    fn rank_one_points_per_representative() {
        // Each representative's Z set consists of rank-1 points of its own
        // step matrix.
        let one = QZeta3::int(1);
        let zeta = QZeta3::gen_zeta();
        let reps: Vec<((QZeta3, QZeta3, QZeta3), u8)> = vec![
            ((one.clone(), one.clone(), one.clone()), 1),
            ((one.clone(), one.clone(), zeta.clone()), 2),
            ((one.clone(), zeta.clone(), zeta.clone()), 3),
            ((one.clone(), QZeta3::int(0), QZeta3::int(0)), 0),
        ];
        for ((a, b, c), which) in reps {
            for pt in z_set::<QZeta3>(&(), which).unwrap() {
                let m = m_matrix(&a, &b, &c, &pt);
                assert_eq!(matrix_rank(&m), 1, "rep ({a},{b},{c}) at {pt}");
                assert!(on_curve_e(&a, &b, &c, &pt));
            }
        }
    }
}
