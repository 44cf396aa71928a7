//! Structural operations on quadratic presentations: the Koszul dual, Zhang
//! twists by graded automorphisms, the Ore-extension presentation of the
//! degenerate Sklyanin algebras, and certificates that an element is normal.

use crate::freealg::{
    gen_index, NcPoly, PresentationError, QuadPresentation, Word, N_GENS,
};
use crate::linalg;
use crate::rewrite::{left_multiply, right_multiply, RewriteError, RewriteSystem};
use crate::scalars::Scalar;

use thiserror::Error;

/// A degree-0 automorphism of the free algebra, given by an invertible
/// matrix: generator `j` maps to `sum_i m[i][j] * gen_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAutomorphism<K: Scalar> {
    m: [[K; 3]; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistError {
    #[error("the matrix is singular, so it is not a graded automorphism")]
    Singular,
}

fn zero_matrix<K: Scalar>() -> [[K; 3]; 3] {
    std::array::from_fn(|_| std::array::from_fn(|_| K::zero()))
}

impl<K: Scalar> GradedAutomorphism<K> {
    pub fn new(m: [[K; 3]; 3]) -> Result<Self, TwistError> {
        if linalg::det3(&m).is_zero() {
            return Err(TwistError::Singular);
        }
        Ok(GradedAutomorphism { m })
    }

    pub fn identity() -> Self {
        let mut m: [[K; 3]; 3] = zero_matrix();
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = if i == j { K::one() } else { K::zero() };
            }
        }
        GradedAutomorphism { m }
    }

    /// Diagonal map x -> zeta x, y -> zeta^2 y, z -> z.
    pub fn sigma(ctx: &K::Ctx) -> Option<Self> {
        let zeta = K::zeta(ctx)?;
        let zeta2 = zeta.clone() * zeta.clone();
        let mut m = Self::identity().m;
        m[0][0] = zeta;
        m[1][1] = zeta2;
        Some(GradedAutomorphism { m })
    }

    /// The cyclic substitution x -> z, y -> x, z -> y.
    pub fn tau() -> Self {
        let o = K::one;
        let z = K::zero;
        GradedAutomorphism {
            m: [[z(), o(), z()], [z(), z(), o()], [o(), z(), z()]],
        }
    }

    pub fn inverse(&self) -> Self {
        let rows: Vec<Vec<K>> = self.m.iter().map(|r| r.to_vec()).collect();
        let inv = linalg::invert(&rows).expect("automorphism is invertible");
        let mut m: [[K; 3]; 3] = zero_matrix();
        for (i, row) in inv.into_iter().enumerate() {
            for (j, e) in row.into_iter().enumerate() {
                m[i][j] = e;
            }
        }
        GradedAutomorphism { m }
    }

    /// Image of generator `g` as a linear polynomial.
    pub fn image(&self, g: u8) -> NcPoly<K> {
        let mut p = NcPoly::zero_poly();
        for i in 0..N_GENS {
            p.add_term(Word::gen(i as u8), self.m[i][g as usize].clone());
        }
        p
    }

    /// Apply the map to every letter of every word (the algebra map).
    pub fn apply(&self, p: &NcPoly<K>) -> NcPoly<K> {
        let mut out = NcPoly::zero_poly();
        for (w, c) in p.iter() {
            let mut prod = NcPoly::monomial(Word::one(), c.clone());
            for g in &w.0 {
                prod = prod * self.image(*g);
            }
            out = out + prod;
        }
        out
    }

    pub fn compose(&self, other: &Self) -> Self {
        let mut m: [[K; 3]; 3] = zero_matrix();
        for i in 0..3 {
            for j in 0..3 {
                let mut s = K::zero();
                for (k, row) in other.m.iter().enumerate() {
                    s = s + self.m[i][k].clone() * row[j].clone();
                }
                m[i][j] = s;
            }
        }
        GradedAutomorphism { m }
    }
}

/// The Koszul dual: the presentation whose relation space is the orthogonal
/// complement of `P`'s relations under the pairing that makes the degree-2
/// word basis orthonormal (`<x_i x_j, x_k x_l> = delta_ik delta_jl`).
pub fn koszul_dual<K: Scalar>(p: &QuadPresentation<K>) -> QuadPresentation<K> {
    let rows = p.coeff_rows();
    let complement = linalg::nullspace(&rows, N_GENS * N_GENS);
    let relations: Vec<NcPoly<K>> =
        complement.iter().map(|row| NcPoly::from_quadratic_row(row)).collect();
    QuadPresentation::new(relations).expect("nullspace basis is independent")
}

/// Pairing of two quadratic polynomials under the orthonormal word pairing.
pub fn quadratic_pairing<K: Scalar>(p: &NcPoly<K>, q: &NcPoly<K>) -> K {
    let (pr, qr) = (p.quadratic_coeff_row(), q.quadratic_coeff_row());
    let mut s = K::zero();
    for (a, b) in pr.into_iter().zip(qr) {
        s = s + a * b;
    }
    s
}

/// The Zhang twist by `sigma`: relations transform by the inverse of the
/// twisting map in the second tensor slot, because a degree-2 relation of the
/// twisted algebra is `sum c_ij x_i * x_j = sum c_ij x_i . sigma(x_j)` read
/// back through `sigma^{-1}`.
pub fn zhang_twist<K: Scalar>(
    p: &QuadPresentation<K>,
    sigma: &GradedAutomorphism<K>,
) -> QuadPresentation<K> {
    let inv = sigma.inverse();
    let relations: Vec<NcPoly<K>> = p
        .relations()
        .iter()
        .map(|r| {
            let mut out = NcPoly::zero_poly();
            for (w, c) in r.iter() {
                assert_eq!(w.degree(), 2);
                let first = Word::gen(w.0[0]);
                let image = inv.image(w.0[1]);
                out = out + left_multiply(&first, &image).scale(c);
            }
            out
        })
        .collect();
    QuadPresentation::new(relations).expect("twisting preserves independence")
}

/// The Ore data of the degenerate family at `a = 1`: the endomorphism
/// `alpha` and the alpha-derivation `delta` of the two-generator free algebra
/// on x, y, extended to z by the Ore relations.
#[derive(Clone, Debug)]
pub struct OreData<K: Scalar> {
    pub b: K,
    pub c: K,
}

impl<K: Scalar> OreData<K> {
    pub fn new(b: K, c: K) -> Self {
        OreData { b, c }
    }

    /// alpha(x) = -b x, alpha(y) = -b^2 y, extended multiplicatively.
    pub fn alpha(&self, p: &NcPoly<K>) -> NcPoly<K> {
        let b = self.b.clone();
        let b2 = b.clone() * b.clone();
        let mut out = NcPoly::zero_poly();
        for (w, coef) in p.iter() {
            let mut c = coef.clone();
            for g in &w.0 {
                c = match g {
                    0 => c * (K::zero() - b.clone()),
                    1 => c * (K::zero() - b2.clone()),
                    _ => panic!("alpha acts on the x, y subalgebra"),
                };
            }
            out.add_term(w.clone(), c);
        }
        out
    }

    /// delta(x) = -c y^2, delta(y) = -b^2 c x^2, extended by the twisted
    /// Leibniz rule delta(rs) = alpha(r) delta(s) + delta(r) s.
    pub fn delta(&self, p: &NcPoly<K>) -> NcPoly<K> {
        let mut out = NcPoly::zero_poly();
        for (w, coef) in p.iter() {
            out = out + self.delta_word(&w.0).scale(coef);
        }
        out
    }

    fn delta_gen(&self, g: u8) -> NcPoly<K> {
        let b2c = self.b.clone() * self.b.clone() * self.c.clone();
        match g {
            0 => NcPoly::monomial(word("yy"), K::zero() - self.c.clone()),
            1 => NcPoly::monomial(word("xx"), K::zero() - b2c),
            _ => panic!("delta acts on the x, y subalgebra"),
        }
    }

    fn delta_word(&self, letters: &[u8]) -> NcPoly<K> {
        match letters {
            [] => NcPoly::zero_poly(),
            [g] => self.delta_gen(*g),
            [g, rest @ ..] => {
                // delta(g . rest) = alpha(g) delta(rest) + delta(g) rest
                let head = NcPoly::gen(*g);
                let alpha_head = self.alpha(&head);
                let tail_word = Word(rest.to_vec());
                alpha_head * self.delta_word(rest)
                    + right_multiply(&self.delta_gen(*g), &tail_word)
            }
        }
    }

    /// Check the twisted Leibniz rule on all generator pairs.
    pub fn leibniz_holds_on_generators(&self) -> bool {
        for g in 0..2u8 {
            for h in 0..2u8 {
                let gh = Word(vec![g, h]);
                let direct = self.delta_word(&gh.0);
                let split = self.alpha(&NcPoly::gen(g)) * self.delta_gen(h)
                    + right_multiply(&self.delta_gen(g), &Word::gen(h));
                if direct != split {
                    return false;
                }
            }
        }
        true
    }
}

fn word(s: &str) -> Word {
    Word(s.chars().map(|c| gen_index(c).unwrap()).collect())
}

/// The quadratic presentation of the Ore extension `k{x,y}[z; alpha, delta]`
/// itself: just the two Ore relations `z g - alpha(g) z - delta(g)` for
/// g = x, y. `Omega` is a nonzero normal element here; the Sklyanin algebra
/// is the quotient by it.
pub fn ore_extension<K: Scalar>(b: &K, c: &K) -> Result<QuadPresentation<K>, PresentationError> {
    let data = OreData::new(b.clone(), c.clone());
    let mut relations = Vec::new();
    for g in 0..2u8 {
        // z g - alpha(g) z - delta(g)
        let zg = NcPoly::word(Word(vec![2, g]));
        let alpha_z = right_multiply(&data.alpha(&NcPoly::gen(g)), &Word::gen(2));
        let rel = zg - alpha_z - data.delta(&NcPoly::gen(g));
        relations.push(rel);
    }
    QuadPresentation::new(relations)
}

/// The two Ore relations together with `Omega = xy + b yx + c z^2`: a
/// presentation of `k{x,y}[z; alpha, delta]/(Omega)`, which has the same
/// relation span as `S(1, b, c)`.
pub fn ore_presentation<K: Scalar>(b: &K, c: &K) -> Result<QuadPresentation<K>, PresentationError> {
    let ext = ore_extension(b, c)?;
    let mut relations = ext.relations().to_vec();
    relations.push(omega(b, c));
    QuadPresentation::new(relations)
}

/// The normal element `Omega = xy + b yx + c z^2`.
pub fn omega<K: Scalar>(b: &K, c: &K) -> NcPoly<K> {
    let mut p = NcPoly::zero_poly();
    p.add_term(word("xy"), K::one());
    p.add_term(word("yx"), b.clone());
    p.add_term(word("zz"), c.clone());
    p
}

/// Outcome of a normality search for one generator: the linear form `g'`
/// with `g * omega = omega * g'`, when one exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityCertificate<K: Scalar> {
    /// Per generator (x, y, z): the commuting linear form, or None.
    pub per_generator: Vec<Option<NcPoly<K>>>,
}

impl<K: Scalar> NormalityCertificate<K> {
    pub fn is_normal(&self) -> bool {
        self.per_generator.iter().all(|c| c.is_some())
    }

    /// When every certificate form is a scalar multiple of its own
    /// generator, return those three scalars.
    pub fn diagonal_scalars(&self) -> Option<[K; 3]> {
        let mut out: [K; 3] = [K::zero(), K::zero(), K::zero()];
        for g in 0..N_GENS {
            let form = self.per_generator[g].as_ref()?;
            for (w, c) in form.iter() {
                if w.0 != [g as u8] && !c.is_zero() {
                    return None;
                }
            }
            out[g] = form.coeff(&Word::gen(g as u8));
        }
        Some(out)
    }
}

/// Search for linear forms certifying that `omega` is normal: for each
/// generator `g`, solve `normal_form(g omega - omega (s x + t y + u z)) = 0`
/// for scalars `(s, t, u)` in normal-word coordinates.
pub fn certify_normal<K: Scalar>(
    rs: &RewriteSystem<K>,
    omega: &NcPoly<K>,
) -> Result<NormalityCertificate<K>, RewriteError> {
    let mut per_generator = Vec::with_capacity(N_GENS);
    for g in 0..N_GENS as u8 {
        let lhs = rs.normal_form(&left_multiply(&Word::gen(g), omega))?;
        let candidates: Vec<NcPoly<K>> = (0..N_GENS as u8)
            .map(|h| rs.normal_form(&right_multiply(omega, &Word::gen(h))))
            .collect::<Result<_, _>>()?;
        // Assemble the linear system over the words appearing anywhere.
        let mut words: Vec<Word> = Vec::new();
        for p in candidates.iter().chain(std::iter::once(&lhs)) {
            for (w, _) in p.iter() {
                if !words.contains(w) {
                    words.push(w.clone());
                }
            }
        }
        words.sort();
        let rows: Vec<Vec<K>> = words
            .iter()
            .map(|w| candidates.iter().map(|p| p.coeff(w)).collect())
            .collect();
        let target: Vec<K> = words.iter().map(|w| lhs.coeff(w)).collect();
        let sol = linalg::solve(&rows, &target).map(|coeffs| {
            let mut form = NcPoly::zero_poly();
            for (h, c) in coeffs.into_iter().enumerate() {
                form.add_term(Word::gen(h as u8), c);
            }
            form
        });
        per_generator.push(sol);
    }
    Ok(NormalityCertificate { per_generator })
}
