//! Words, graded noncommutative polynomials, and quadratic presentations of
//! the free algebra `k{x, y, z}`, including the three-parameter Sklyanin
//! family `S(a, b, c)`.

use crate::linalg;
use crate::scalars::{ParseScalarError, Scalar};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// Generator index: 0 = x, 1 = y, 2 = z.
pub type Gen = u8;

/// Number of generators (fixed: x, y, z).
pub const N_GENS: usize = 3;

pub fn gen_name(g: Gen) -> char {
    match g {
        0 => 'x',
        1 => 'y',
        2 => 'z',
        _ => panic!("generator index {g} out of range"),
    }
}

pub fn gen_index(name: char) -> Option<Gen> {
    match name {
        'x' => Some(0),
        'y' => Some(1),
        'z' => Some(2),
        _ => None,
    }
}

/// A monomial of the free algebra: a finite sequence of generators.
/// The empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn one() -> Self {
        Word(Vec::new())
    }

    pub fn gen(g: Gen) -> Self {
        Word(vec![g])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// First position where `factor` occurs as a contiguous subword.
    pub fn find_factor(&self, factor: &Word) -> Option<usize> {
        if factor.0.is_empty() || factor.0.len() > self.0.len() {
            return None;
        }
        self.0.windows(factor.0.len()).position(|w| w == factor.0)
    }

    pub fn contains_factor(&self, factor: &Word) -> bool {
        self.find_factor(factor).is_some()
    }
}

/// Storage order: degree first, then lexicographic in the fixed letter order
/// x < y < z. Rewriting orders are configured separately.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let joined: Vec<String> = self.0.iter().map(|g| gen_name(*g).to_string()).collect();
        write!(f, "{}", joined.join("."))
    }
}

/// A noncommutative polynomial: a finite map from words to nonzero scalars.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NcPoly<K: Scalar> {
    terms: BTreeMap<Word, K>,
}

impl<K: Scalar> NcPoly<K> {
    pub fn zero_poly() -> Self {
        NcPoly { terms: BTreeMap::new() }
    }

    pub fn monomial(w: Word, c: K) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        NcPoly { terms }
    }

    pub fn word(w: Word) -> Self {
        NcPoly::monomial(w, K::one())
    }

    pub fn gen(g: Gen) -> Self {
        NcPoly::word(Word::gen(g))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> K {
        self.terms.get(w).cloned().unwrap_or_else(K::zero)
    }

    pub fn add_term(&mut self, w: Word, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&w) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(w, s);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return NcPoly::zero_poly();
        }
        let mut terms = BTreeMap::new();
        for (w, k) in &self.terms {
            let v = k.clone() * c.clone();
            if !v.is_zero() {
                terms.insert(w.clone(), v);
            }
        }
        NcPoly { terms }
    }

    /// Maximum word degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.degree()).max()
    }

    /// The common degree when every term has it.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys();
        let d = it.next()?.degree();
        if it.all(|w| w.degree() == d) { Some(d) } else { None }
    }

    /// Coefficient vector over the ordered degree-2 word basis
    /// {xx, xy, xz, yx, yy, yz, zx, zy, zz}.
    pub fn quadratic_coeff_row(&self) -> Vec<K> {
        let mut row = vec![K::zero(); N_GENS * N_GENS];
        for (w, c) in &self.terms {
            assert_eq!(w.degree(), 2, "not a quadratic polynomial");
            row[w.0[0] as usize * N_GENS + w.0[1] as usize] = c.clone();
        }
        row
    }

    /// Rebuild a quadratic polynomial from a coefficient row.
    pub fn from_quadratic_row(row: &[K]) -> Self {
        assert_eq!(row.len(), N_GENS * N_GENS);
        let mut p = NcPoly::zero_poly();
        for (idx, c) in row.iter().enumerate() {
            if !c.is_zero() {
                let w = Word(vec![(idx / N_GENS) as Gen, (idx % N_GENS) as Gen]);
                p.add_term(w, c.clone());
            }
        }
        p
    }
}

impl<K: Scalar> Add for NcPoly<K> {
    type Output = NcPoly<K>;
    fn add(self, rhs: NcPoly<K>) -> NcPoly<K> {
        let mut out = self;
        for (w, c) in rhs.terms {
            out.add_term(w, c);
        }
        out
    }
}

impl<K: Scalar> Sub for NcPoly<K> {
    type Output = NcPoly<K>;
    fn sub(self, rhs: NcPoly<K>) -> NcPoly<K> {
        let mut out = self;
        for (w, c) in rhs.terms {
            out.add_term(w, K::zero() - c);
        }
        out
    }
}

impl<K: Scalar> Neg for NcPoly<K> {
    type Output = NcPoly<K>;
    fn neg(self) -> NcPoly<K> {
        NcPoly { terms: self.terms.into_iter().map(|(w, c)| (w, K::zero() - c)).collect() }
    }
}

impl<K: Scalar> Mul for NcPoly<K> {
    type Output = NcPoly<K>;
    fn mul(self, rhs: NcPoly<K>) -> NcPoly<K> {
        nc_multiply(&self, &rhs)
    }
}

/// Bilinear word-concatenation product.
pub fn nc_multiply<K: Scalar>(p: &NcPoly<K>, q: &NcPoly<K>) -> NcPoly<K> {
    let mut out = NcPoly::zero_poly();
    for (wp, cp) in &p.terms {
        for (wq, cq) in &q.terms {
            out.add_term(wp.concat(wq), cp.clone() * cq.clone());
        }
    }
    out
}

impl<K: Scalar> fmt::Display for NcPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> =
            self.terms.iter().map(|(w, c)| format!("{c}*{w}")).collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

/// Errors from building or parsing presentations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("invalid presentation: all of a, b, c are zero")]
    AllZeroParams,
    #[error("relation {index} is zero")]
    ZeroRelation { index: usize },
    #[error("relation {index} is not homogeneous of degree 2")]
    NotQuadratic { index: usize },
    #[error("relations are linearly dependent (rank {rank} < {count})")]
    DependentRelations { rank: usize, count: usize },
    #[error("line {line}, column {col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error(transparent)]
    Scalar(#[from] ParseScalarError),
}

/// A quadratic presentation of an algebra on the generators x, y, z:
/// a linearly independent list of degree-2 relations, with the `(a, b, c)`
/// parameters recorded when the presentation comes from the Sklyanin family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadPresentation<K: Scalar> {
    relations: Vec<NcPoly<K>>,
    params: Option<(K, K, K)>,
}

impl<K: Scalar> QuadPresentation<K> {
    pub fn new(relations: Vec<NcPoly<K>>) -> Result<Self, PresentationError> {
        for (index, r) in relations.iter().enumerate() {
            if r.is_zero() {
                return Err(PresentationError::ZeroRelation { index });
            }
            if r.homogeneous_degree() != Some(2) {
                return Err(PresentationError::NotQuadratic { index });
            }
        }
        let rows: Vec<Vec<K>> = relations.iter().map(|r| r.quadratic_coeff_row()).collect();
        let rank = linalg::rank(&rows);
        if rank < relations.len() {
            return Err(PresentationError::DependentRelations { rank, count: relations.len() });
        }
        Ok(QuadPresentation { relations, params: None })
    }

    pub fn relations(&self) -> &[NcPoly<K>] {
        &self.relations
    }

    pub fn params(&self) -> Option<&(K, K, K)> {
        self.params.as_ref()
    }

    /// Coefficient matrix of the relations over the degree-2 word basis.
    pub fn coeff_rows(&self) -> Vec<Vec<K>> {
        self.relations.iter().map(|r| r.quadratic_coeff_row()).collect()
    }
}

/// The Sklyanin presentation `S(a, b, c)`:
/// `f1 = a yz + b zy + c x^2`, `f2 = a zx + b xz + c y^2`,
/// `f3 = a xy + b yx + c z^2`, with `(a, b, c)` scaled so its first nonzero
/// entry is 1 (the family is projective in the parameters).
pub fn sklyanin_presentation<K: Scalar>(
    a: &K,
    b: &K,
    c: &K,
) -> Result<QuadPresentation<K>, PresentationError> {
    let lead = [a, b, c].into_iter().find(|s| !s.is_zero());
    let Some(lead) = lead else {
        return Err(PresentationError::AllZeroParams);
    };
    let li = lead.inv().expect("nonzero scalar");
    let (a, b, c) = (a.clone() * li.clone(), b.clone() * li.clone(), c.clone() * li);

    let w = |s: &str| -> Word {
        Word(s.chars().map(|ch| gen_index(ch).unwrap()).collect())
    };
    let rel = |wa: &str, wb: &str, wc: &str| -> NcPoly<K> {
        let mut p = NcPoly::zero_poly();
        p.add_term(w(wa), a.clone());
        p.add_term(w(wb), b.clone());
        p.add_term(w(wc), c.clone());
        p
    };
    let relations = vec![rel("yz", "zy", "xx"), rel("zx", "xz", "yy"), rel("xy", "yx", "zz")];
    let mut p = QuadPresentation::new(relations)?;
    p.params = Some((a, b, c));
    Ok(p)
}

/// Membership of `[a:b:c]` in the degeneracy locus: the three coordinate
/// points together with the triples where `a^3 = b^3 = c^3 != 0` (the
/// scale-invariant form of "all cubes equal 1").
pub fn in_degenerate_locus<K: Scalar>(a: &K, b: &K, c: &K) -> bool {
    assert!(!(a.is_zero() && b.is_zero() && c.is_zero()), "all-zero parameter triple");
    let zeros = [a, b, c].iter().filter(|s| s.is_zero()).count();
    if zeros == 2 {
        return true; // coordinate point
    }
    if zeros > 0 {
        return false;
    }
    let cube = |s: &K| s.clone() * s.clone() * s.clone();
    cube(a) == cube(b) && cube(b) == cube(c)
}

/// True when two presentations span the same subspace of the 9-dimensional
/// degree-2 component.
pub fn relation_span_equal<K: Scalar>(p: &QuadPresentation<K>, q: &QuadPresentation<K>) -> bool {
    linalg::same_row_span(&p.coeff_rows(), &q.coeff_rows())
}

// ---- presentation text format ----

/// Render a presentation in the text format: a `generators: x y z` header,
/// then one relation per line such as `1*y.z + 1*z.y + 1*x.x`.
pub fn print_presentation<K: Scalar>(p: &QuadPresentation<K>) -> String {
    let mut out = String::from("generators: x y z\n");
    for r in &p.relations {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}

/// Parse the presentation text format. Errors carry line and column numbers
/// (1-based).
pub fn parse_presentation<K: Scalar>(
    ctx: &K::Ctx,
    text: &str,
) -> Result<QuadPresentation<K>, PresentationError> {
    let mut lines = text.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((i, l)) if l.trim().is_empty() => {
                let _ = i;
                continue;
            }
            Some((i, l)) => break (i, l),
            None => {
                return Err(PresentationError::Syntax {
                    line: 1,
                    col: 1,
                    message: "empty presentation file".to_string(),
                })
            }
        }
    };
    let (hline, htext) = header;
    let expect = "generators: x y z";
    if htext.trim() != expect {
        return Err(PresentationError::Syntax {
            line: hline + 1,
            col: 1,
            message: format!("expected header `{expect}`"),
        });
    }
    let mut relations = Vec::new();
    for (i, l) in lines {
        if l.trim().is_empty() {
            continue;
        }
        relations.push(parse_relation_line::<K>(ctx, l, i + 1)?);
    }
    QuadPresentation::new(relations)
}

/// Parse a single polynomial in the relation-line syntax, e.g.
/// `1*xy + w*yx + 1*zz`.
pub fn parse_poly<K: Scalar>(ctx: &K::Ctx, line: &str) -> Result<NcPoly<K>, PresentationError> {
    parse_relation_line::<K>(ctx, line, 1)
}

fn parse_relation_line<K: Scalar>(
    ctx: &K::Ctx,
    line: &str,
    lineno: usize,
) -> Result<NcPoly<K>, PresentationError> {
    let syntax = |col: usize, message: String| PresentationError::Syntax {
        line: lineno,
        col,
        message,
    };
    let mut poly = NcPoly::zero_poly();
    // Terms are separated by standalone `+` or `-` tokens (surrounded by
    // spaces); signs inside a scalar belong to the scalar.
    let mut term_start = 0usize;
    let mut term_sign = 1i64;
    let bytes = line.as_bytes();
    let mut chunks: Vec<(usize, i64, &str)> = Vec::new();
    let mut pos = 0usize;
    loop {
        // Find next " + " or " - " separator at or after pos.
        let mut sep: Option<(usize, i64)> = None;
        let mut scan = pos;
        while scan + 2 < bytes.len() {
            if bytes[scan] == b' '
                && (bytes[scan + 1] == b'+' || bytes[scan + 1] == b'-')
                && bytes[scan + 2] == b' '
            {
                sep = Some((scan, if bytes[scan + 1] == b'+' { 1 } else { -1 }));
                break;
            }
            scan += 1;
        }
        match sep {
            Some((at, sign)) => {
                chunks.push((term_start, term_sign, line[term_start..at].trim()));
                term_start = at + 3;
                term_sign = sign;
                pos = term_start;
            }
            None => {
                chunks.push((term_start, term_sign, line[term_start..].trim()));
                break;
            }
        }
    }
    for (col0, sign, chunk) in chunks {
        if chunk.is_empty() {
            return Err(syntax(col0 + 1, "empty term".to_string()));
        }
        // Split the scalar from the word at the last `*` before the word.
        let star = chunk
            .rfind('*')
            .ok_or_else(|| syntax(col0 + 1, format!("term `{chunk}` lacks `<scalar>*<word>`")))?;
        let (scalar_text, word_text) = (&chunk[..star], &chunk[star + 1..]);
        let mut letters = Vec::new();
        for piece in word_text.split('.') {
            let piece = piece.trim();
            let mut cs = piece.chars();
            let (Some(ch), None) = (cs.next(), cs.next()) else {
                return Err(syntax(
                    col0 + star + 2,
                    format!("bad generator `{piece}` (expected x, y, or z)"),
                ));
            };
            let Some(g) = gen_index(ch) else {
                return Err(syntax(
                    col0 + star + 2,
                    format!("unknown generator `{ch}` (expected x, y, or z)"),
                ));
            };
            letters.push(g);
        }
        let coeff = K::parse_scalar(ctx, scalar_text.trim()).map_err(|e| {
            syntax(col0 + 1 + e.offset, format!("bad scalar `{}`: {}", scalar_text.trim(), e.reason))
        })?;
        let signed = if sign < 0 { K::zero() - coeff } else { coeff };
        poly.add_term(Word(letters), signed);
    }
    Ok(poly)
}
