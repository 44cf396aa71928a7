//! Degree-truncated diamond-lemma rewriting for quadratic algebras:
//! completion of a presentation into a confluent rule system up to a degree
//! bound, normal forms, irreducible-word bases, and Hilbert functions.

use crate::freealg::{Gen, NcPoly, QuadPresentation, Word, N_GENS};
use crate::scalars::Scalar;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Degree-lexicographic order with a configurable generator precedence.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MonomialOrder {
    /// rank[g] = position of generator g in the precedence (0 = smallest).
    rank: [u8; N_GENS],
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid order `{0}`: expected a permutation of x, y, z such as x,y,z")]
pub struct OrderParseError(pub String);

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder { rank: [0, 1, 2] }
    }
}

impl MonomialOrder {
    /// Order with `perm[0] < perm[1] < perm[2]`.
    pub fn with_precedence(perm: [Gen; N_GENS]) -> Self {
        let mut rank = [u8::MAX; N_GENS];
        for (pos, g) in perm.iter().enumerate() {
            rank[*g as usize] = pos as u8;
        }
        assert!(rank.iter().all(|r| *r != u8::MAX), "not a permutation");
        MonomialOrder { rank }
    }

    /// Accepts `x,y,z`, `xyz`, or `x<y<z` (smallest first).
    pub fn parse(s: &str) -> Result<Self, OrderParseError> {
        let letters: Vec<char> = s.chars().filter(|c| !matches!(c, ',' | '<' | ' ')).collect();
        if letters.len() != N_GENS {
            return Err(OrderParseError(s.to_string()));
        }
        let mut perm = [0 as Gen; N_GENS];
        let mut seen = [false; N_GENS];
        for (i, ch) in letters.iter().enumerate() {
            let g = crate::freealg::gen_index(*ch).ok_or_else(|| OrderParseError(s.to_string()))?;
            if seen[g as usize] {
                return Err(OrderParseError(s.to_string()));
            }
            seen[g as usize] = true;
            perm[i] = g;
        }
        Ok(MonomialOrder::with_precedence(perm))
    }

    pub fn cmp_words(&self, a: &Word, b: &Word) -> Ordering {
        a.0.len().cmp(&b.0.len()).then_with(|| {
            for (ga, gb) in a.0.iter().zip(b.0.iter()) {
                let c = self.rank[*ga as usize].cmp(&self.rank[*gb as usize]);
                if c != Ordering::Equal {
                    return c;
                }
            }
            Ordering::Equal
        })
    }

    /// Generators from smallest to largest.
    pub fn precedence(&self) -> [Gen; N_GENS] {
        let mut perm = [0 as Gen; N_GENS];
        for g in 0..N_GENS {
            perm[self.rank[g] as usize] = g as Gen;
        }
        perm
    }

    fn leading_word<'a, K: Scalar>(&self, p: &'a NcPoly<K>) -> Option<&'a Word> {
        p.iter().map(|(w, _)| w).max_by(|a, b| self.cmp_words(a, b))
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.precedence();
        write!(
            f,
            "{},{},{}",
            crate::freealg::gen_name(p[0]),
            crate::freealg::gen_name(p[1]),
            crate::freealg::gen_name(p[2])
        )
    }
}

/// One rewrite rule `lhs -> rhs` with every word of `rhs` strictly smaller
/// than `lhs` and `rhs` fully reduced against the other rules.
#[derive(Clone, Debug)]
pub struct Rule<K: Scalar> {
    pub lhs: Word,
    pub rhs: NcPoly<K>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("word of degree {degree} exceeds the completion certificate (degree {completed_to}); deepen the completion")]
    NeedsDeeperCompletion { degree: usize, completed_to: usize },
}

/// A rule system confluent on words of degree up to `completed_to`.
#[derive(Clone, Debug)]
pub struct RewriteSystem<K: Scalar> {
    order: MonomialOrder,
    rules: Vec<Rule<K>>,
    completed_to: usize,
}

/// Run truncated completion: form overlap ambiguities, reduce, adjoin new
/// rules, keep everything inter-reduced, and stop at the degree bound.
/// Terminates because the words below the bound are finitely many and a word
/// that becomes reducible stays reducible.
pub fn complete_to_degree<K: Scalar>(
    p: &QuadPresentation<K>,
    order: MonomialOrder,
    max_degree: usize,
) -> RewriteSystem<K> {
    assert!(max_degree >= 2, "completion degree must be at least 2");
    let mut rs = RewriteSystem { order, rules: Vec::new(), completed_to: max_degree };
    let mut pending: Vec<NcPoly<K>> = p.relations().to_vec();

    while !pending.is_empty() {
        // Take the polynomial with the smallest leading word: degree-graded
        // processing keeps lower degrees settled first.
        let mut best = 0usize;
        for i in 1..pending.len() {
            let li = order.leading_word(&pending[i]);
            let lb = order.leading_word(&pending[best]);
            match (li, lb) {
                (Some(a), Some(b)) if order.cmp_words(a, b) == Ordering::Less => best = i,
                (None, _) => best = i, // zero polynomials drain first
                _ => {}
            }
        }
        let poly = pending.swap_remove(best);
        let reduced = rs.normal_form_unchecked(&poly);
        if reduced.is_zero() {
            continue;
        }
        let lead = order.leading_word(&reduced).expect("nonzero").clone();
        let lead_coeff = reduced.coeff(&lead);
        let inv = lead_coeff.inv().expect("field coefficient");
        let monic = reduced.scale(&inv);
        // The rule is lhs -> lhs - monic (the strictly smaller remainder).
        let mut tail = NcPoly::zero_poly() - monic;
        tail.add_term(lead.clone(), num_traits::One::one());

        // Retire rules whose lhs is now reducible; their content re-enters
        // the queue so nothing is lost.
        let mut kept = Vec::with_capacity(rs.rules.len());
        for rule in std::mem::take(&mut rs.rules) {
            if rule.lhs.contains_factor(&lead) {
                let mut back = rule.rhs.clone();
                back = NcPoly::zero_poly() - back;
                back.add_term(rule.lhs.clone(), num_traits::One::one());
                pending.push(back); // lhs - rhs
            } else {
                kept.push(rule);
            }
        }
        rs.rules = kept;
        rs.rules.push(Rule { lhs: lead.clone(), rhs: tail });

        // Keep every tail fully reduced under the enlarged system.
        for i in 0..rs.rules.len() {
            let rhs = rs.rules[i].rhs.clone();
            let reduced = rs.normal_form_unchecked(&rhs);
            rs.rules[i].rhs = reduced;
        }

        // Queue the overlap ambiguities involving the new rule.
        let new_idx = rs.rules.len() - 1;
        for i in 0..rs.rules.len() {
            for (a, b) in [(i, new_idx), (new_idx, i)] {
                let (u, v) = (rs.rules[a].lhs.clone(), rs.rules[b].lhs.clone());
                for s in rs.spolynomials(&u, &v, a, b, max_degree) {
                    pending.push(s);
                }
            }
        }
    }

    // Confluence certificate: every ambiguity within the bound resolves to 0.
    for a in 0..rs.rules.len() {
        for b in 0..rs.rules.len() {
            let (u, v) = (rs.rules[a].lhs.clone(), rs.rules[b].lhs.clone());
            for s in rs.spolynomials(&u, &v, a, b, max_degree) {
                let nf = rs.normal_form_unchecked(&s);
                assert!(
                    nf.is_zero(),
                    "ambiguity of {u} and {v} fails to resolve: {nf}"
                );
            }
        }
    }
    rs
}

impl<K: Scalar> RewriteSystem<K> {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn rules(&self) -> &[Rule<K>] {
        &self.rules
    }

    pub fn completed_to(&self) -> usize {
        self.completed_to
    }

    /// S-polynomials of the overlaps `u = s t`, `v = t r` (shared part `t`
    /// proper on both sides): the two one-step routes for the word `s t r`
    /// differ by `rhs_a . r - s . rhs_b`.
    fn spolynomials(
        &self,
        u: &Word,
        v: &Word,
        rule_a: usize,
        rule_b: usize,
        max_degree: usize,
    ) -> Vec<NcPoly<K>> {
        let mut out = Vec::new();
        let (lu, lv) = (u.0.len(), v.0.len());
        for k in 1..lu.min(lv) {
            if u.0[lu - k..] != v.0[..k] {
                continue;
            }
            let total = lu + lv - k;
            if total > max_degree {
                continue;
            }
            let head = Word(u.0[..lu - k].to_vec());
            let tail = Word(v.0[k..].to_vec());
            let route_a = right_multiply(&self.rules[rule_a].rhs, &tail);
            let route_b = left_multiply(&head, &self.rules[rule_b].rhs);
            out.push(route_a - route_b);
        }
        out
    }

    /// Full reduction without the degree-certificate check (used during
    /// completion, where every queued polynomial is within the bound).
    fn normal_form_unchecked(&self, p: &NcPoly<K>) -> NcPoly<K> {
        let mut cur = p.clone();
        'outer: loop {
            // Deterministic sweep: largest stored word first, first matching
            // rule, leftmost occurrence.
            let mut target: Option<(Word, K, usize, usize)> = None;
            for (w, c) in cur.iter().collect::<Vec<_>>().into_iter().rev() {
                for (ri, rule) in self.rules.iter().enumerate() {
                    if let Some(pos) = w.find_factor(&rule.lhs) {
                        target = Some((w.clone(), c.clone(), ri, pos));
                        break;
                    }
                }
                if target.is_some() {
                    break;
                }
            }
            let Some((w, c, ri, pos)) = target else {
                break 'outer;
            };
            let rule = &self.rules[ri];
            let head = Word(w.0[..pos].to_vec());
            let tail = Word(w.0[pos + rule.lhs.0.len()..].to_vec());
            let replacement = left_multiply(&head, &right_multiply(&rule.rhs, &tail));
            cur.add_term(w, K::zero() - c.clone());
            cur = cur + replacement.scale(&c);
        }
        cur
    }

    /// Fully reduced representative of `p` modulo the ideal, valid for
    /// degrees within the completion certificate.
    pub fn normal_form(&self, p: &NcPoly<K>) -> Result<NcPoly<K>, RewriteError> {
        if let Some(d) = p.degree() {
            if d > self.completed_to {
                return Err(RewriteError::NeedsDeeperCompletion {
                    degree: d,
                    completed_to: self.completed_to,
                });
            }
        }
        Ok(self.normal_form_unchecked(p))
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.rules.iter().all(|r| !w.contains_factor(&r.lhs))
    }

    /// Count irreducible words per degree with the forbidden-factor
    /// automaton: states are proper prefixes of the rule leads, a step dies
    /// when the suffix completes a lead.
    pub fn hilbert_function(&self, max_degree: usize) -> Result<Vec<u64>, RewriteError> {
        if max_degree > self.completed_to {
            return Err(RewriteError::NeedsDeeperCompletion {
                degree: max_degree,
                completed_to: self.completed_to,
            });
        }
        let automaton = FactorAutomaton::build(&self.forbidden());
        let mut counts = vec![0u64; max_degree + 1];
        let mut state_mass: Vec<u64> = vec![0; automaton.states.len()];
        state_mass[0] = 1;
        counts[0] = 1;
        for d in 1..=max_degree {
            let mut next = vec![0u64; automaton.states.len()];
            for (s, m) in state_mass.iter().enumerate() {
                if *m == 0 {
                    continue;
                }
                for g in 0..N_GENS {
                    if let Some(t) = automaton.next[s][g] {
                        next[t] += m;
                    }
                }
            }
            counts[d] = next.iter().sum();
            state_mass = next;
        }
        Ok(counts)
    }

    /// The irreducible words of one degree, ascending in this system's order.
    pub fn normal_words(&self, degree: usize) -> Result<Vec<Word>, RewriteError> {
        if degree > self.completed_to {
            return Err(RewriteError::NeedsDeeperCompletion {
                degree,
                completed_to: self.completed_to,
            });
        }
        let automaton = FactorAutomaton::build(&self.forbidden());
        let perm = self.order.precedence();
        let mut out = Vec::new();
        let mut stack: Vec<Gen> = Vec::with_capacity(degree);
        self.walk(&automaton, &perm, 0, degree, &mut stack, &mut out);
        Ok(out)
    }

    fn walk(
        &self,
        automaton: &FactorAutomaton,
        perm: &[Gen; N_GENS],
        state: usize,
        remaining: usize,
        stack: &mut Vec<Gen>,
        out: &mut Vec<Word>,
    ) {
        if remaining == 0 {
            out.push(Word(stack.clone()));
            return;
        }
        for g in perm {
            if let Some(t) = automaton.next[state][*g as usize] {
                stack.push(*g);
                self.walk(automaton, perm, t, remaining - 1, stack, out);
                stack.pop();
            }
        }
    }

    fn forbidden(&self) -> Vec<Word> {
        self.rules.iter().map(|r| r.lhs.clone()).collect()
    }
}

pub fn left_multiply<K: Scalar>(w: &Word, p: &NcPoly<K>) -> NcPoly<K> {
    let mut out = NcPoly::zero_poly();
    for (pw, c) in p.iter() {
        out.add_term(w.concat(pw), c.clone());
    }
    out
}

pub fn right_multiply<K: Scalar>(p: &NcPoly<K>, w: &Word) -> NcPoly<K> {
    let mut out = NcPoly::zero_poly();
    for (pw, c) in p.iter() {
        out.add_term(pw.concat(w), c.clone());
    }
    out
}

/// Deterministic finite automaton over the generator alphabet whose live
/// states are the proper prefixes of the forbidden words.
struct FactorAutomaton {
    states: Vec<Word>,
    /// next[state][letter] = successor, or None when the step completes a
    /// forbidden word.
    next: Vec<[Option<usize>; N_GENS]>,
}

impl FactorAutomaton {
    fn build(forbidden: &[Word]) -> Self {
        let mut states: Vec<Word> = vec![Word::one()];
        for f in forbidden {
            for len in 1..f.0.len() {
                let prefix = Word(f.0[..len].to_vec());
                if !states.contains(&prefix) {
                    states.push(prefix);
                }
            }
        }
        states.sort();
        states.dedup();
        let index: BTreeMap<Word, usize> =
            states.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let ends_forbidden = |w: &Word| {
            forbidden.iter().any(|f| {
                f.0.len() <= w.0.len() && w.0[w.0.len() - f.0.len()..] == f.0[..]
            })
        };
        let mut next = vec![[None; N_GENS]; states.len()];
        for (si, s) in states.iter().enumerate() {
            for g in 0..N_GENS {
                let mut t = s.clone();
                t.0.push(g as Gen);
                if ends_forbidden(&t) {
                    continue;
                }
                // Longest suffix of t that is a state.
                let mut found = 0usize;
                for start in 0..=t.0.len() {
                    let suffix = Word(t.0[start..].to_vec());
                    if let Some(ix) = index.get(&suffix) {
                        found = *ix;
                        break;
                    }
                }
                next[si][g] = Some(found);
            }
        }
        FactorAutomaton { states, next }
    }
}
