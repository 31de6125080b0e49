//! Shifted sums, mixed sums and the star sum, via a calculus of finite
//! exponent strings.
//!
//! `γ` is a *shifted sum* of `a` and `b` when `γ = I ∪ J` for subsets with
//! order types `a` and `b` (overlap allowed); a *mixed sum* additionally
//! requires `I` and `J` disjoint. Writing `σ(γ)` for the string of CNF
//! exponents of `γ` with coefficients expanded (non-increasing, one item per
//! `ω^η` summand), `γ` is a shifted sum exactly when `σ(a)` and `σ(b)` split
//! into consecutive blocks, one per position of `σ(γ)`, where each block is
//! either the single item `η` or a run of items `< η`, and at every position
//! at least one side contributes the exact item. For mixed sums, positions
//! with `η = 0` cover a single point, so there the two sides cannot both be
//! exact.
//!
//! All decision procedures, the enumerators and the extremal formulas in
//! this module work purely on these strings.

use std::collections::{BTreeSet, HashMap};
use std::ops::Range;

use crate::{Error, Exponent, Ordinal, Result};

/// Hard cap on expanded string length, so huge coefficients cannot blow up
/// the calculus.
const EXPANSION_CAP: u64 = 4096;

/// Cap on the combined string length accepted by the enumerators.
const ENUMERATION_CAP: usize = 40;

/// The exponents of an ordinal's CNF with coefficients expanded to
/// repetitions, highest first. Arbitrary item lists are allowed; a string is
/// *reduced* iff its items are non-increasing, and [`reduce`] projects onto
/// that form without changing the denoted value.
///
/// [`reduce`]: SigmaString::reduce
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SigmaString {
    items: Vec<Exponent>,
}

impl SigmaString {
    pub fn from_items(items: Vec<Exponent>) -> Self {
        SigmaString { items }
    }

    pub fn items(&self) -> &[Exponent] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.items.windows(2).all(|w| w[0] >= w[1])
    }

    /// Drops every item followed (anywhere later) by a strictly larger one —
    /// exactly the summands absorbed in `ω^{e_1} + … + ω^{e_n}` — leaving a
    /// non-increasing string with the same value.
    pub fn reduce(&self) -> SigmaString {
        let mut kept: Vec<Exponent> = Vec::with_capacity(self.items.len());
        let mut max_suffix: Option<&Exponent> = None;
        for x in self.items.iter().rev() {
            if max_suffix.is_none_or(|m| x >= m) {
                kept.push(x.clone());
                max_suffix = Some(x);
            }
        }
        kept.reverse();
        SigmaString { items: kept }
    }
}

/// Expands the CNF of `g` into its exponent string.
pub fn sigma(g: &Ordinal) -> Result<SigmaString> {
    let total: u64 = g.terms().iter().map(|(_, c)| *c).sum();
    if total > EXPANSION_CAP {
        return Err(Error::ExpansionTooLarge { len: total, cap: EXPANSION_CAP });
    }
    let mut items = Vec::with_capacity(total as usize);
    for (e, c) in g.terms() {
        for _ in 0..*c {
            items.push(e.clone());
        }
    }
    Ok(SigmaString { items })
}

/// Value of a string as the ordinal sum `ω^{e_1} + … + ω^{e_n}` in item
/// order; inverse of [`sigma`] on reduced strings.
pub fn delta(s: &SigmaString) -> Ordinal {
    let mut terms: Vec<(Exponent, u64)> = Vec::new();
    for e in &s.reduce().items {
        match terms.last_mut() {
            Some((last, c)) if last == e => *c += 1,
            _ => terms.push((e.clone(), 1)),
        }
    }
    Ordinal::from_terms_unchecked(terms)
}

/// One position of a block decomposition: which items of `σ(a)` and `σ(b)`
/// the position consumed, and whether each side contributed the exact item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionBlocks {
    /// The item `η` of `σ(g)` at this position.
    pub eta: Exponent,
    /// Consumed index range of `σ(a)`, one item when `a_exact`, else a
    /// (possibly empty) run of items `< η`.
    pub a_range: Range<usize>,
    /// Consumed index range of `σ(b)`.
    pub b_range: Range<usize>,
    pub a_exact: bool,
    pub b_exact: bool,
}

/// A full block decomposition witnessing a shifted/mixed sum, one entry per
/// item of `σ(g)` in string order (largest exponent first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumCertificate {
    pub positions: Vec<PositionBlocks>,
}

fn check_nonzero(op: &'static str, args: &[&Ordinal]) -> Result<()> {
    if args.iter().any(|a| a.is_zero()) {
        return Err(Error::ZeroArgument(op));
    }
    Ok(())
}

/// Longest run of consecutive items `< eta` starting at `from`.
fn run_len(items: &[Exponent], from: usize, eta: &Exponent) -> usize {
    items[from..].iter().take_while(|x| *x < eta).count()
}

struct BlockSearch<'a> {
    g: &'a [Exponent],
    a: &'a [Exponent],
    b: &'a [Exponent],
    mixed: bool,
    /// Failed states, indexed by `(i, pa, pb)` flattened.
    dead: Vec<bool>,
}

impl BlockSearch<'_> {
    fn dead_index(&self, i: usize, pa: usize, pb: usize) -> usize {
        (i * (self.a.len() + 1) + pa) * (self.b.len() + 1) + pb
    }

    /// Depth-first search over the block decompositions; `path` carries the
    /// partial certificate. Branch order (exact-`a` with shortest runs
    /// first, then exact-`b`, then both-exact) fixes which certificate is
    /// produced when several exist.
    fn go(&mut self, i: usize, pa: usize, pb: usize, path: &mut Vec<PositionBlocks>) -> bool {
        if i == self.g.len() {
            return pa == self.a.len() && pb == self.b.len();
        }
        if self.dead[self.dead_index(i, pa, pb)] {
            return false;
        }
        let eta = &self.g[i];
        if self.a.get(pa) == Some(eta) {
            for lb in 0..=run_len(self.b, pb, eta) {
                path.push(PositionBlocks {
                    eta: eta.clone(),
                    a_range: pa..pa + 1,
                    b_range: pb..pb + lb,
                    a_exact: true,
                    b_exact: false,
                });
                if self.go(i + 1, pa + 1, pb + lb, path) {
                    return true;
                }
                path.pop();
            }
        }
        if self.b.get(pb) == Some(eta) {
            for la in 0..=run_len(self.a, pa, eta) {
                path.push(PositionBlocks {
                    eta: eta.clone(),
                    a_range: pa..pa + la,
                    b_range: pb..pb + 1,
                    a_exact: false,
                    b_exact: true,
                });
                if self.go(i + 1, pa + la, pb + 1, path) {
                    return true;
                }
                path.pop();
            }
        }
        let both_allowed = !self.mixed || !eta.is_zero();
        if both_allowed && self.a.get(pa) == Some(eta) && self.b.get(pb) == Some(eta) {
            path.push(PositionBlocks {
                eta: eta.clone(),
                a_range: pa..pa + 1,
                b_range: pb..pb + 1,
                a_exact: true,
                b_exact: true,
            });
            if self.go(i + 1, pa + 1, pb + 1, path) {
                return true;
            }
            path.pop();
        }
        let idx = self.dead_index(i, pa, pb);
        self.dead[idx] = true;
        false
    }
}

fn decompose(g: &Ordinal, a: &Ordinal, b: &Ordinal, mixed: bool) -> Result<Option<SumCertificate>> {
    check_nonzero(if mixed { "is_mixed_sum" } else { "is_shifted_sum" }, &[g, a, b])?;
    let sg = sigma(g)?;
    let sa = sigma(a)?;
    let sb = sigma(b)?;
    let dead = vec![false; (sg.len() + 1) * (sa.len() + 1) * (sb.len() + 1)];
    let mut search = BlockSearch { g: sg.items(), a: sa.items(), b: sb.items(), mixed, dead };
    let mut path = Vec::with_capacity(sg.len());
    if search.go(0, 0, 0, &mut path) {
        Ok(Some(SumCertificate { positions: path }))
    } else {
        Ok(None)
    }
}

/// Block-decomposition witness that `g = I ∪ J` with order types `a`, `b`
/// (overlap allowed), if one exists.
pub fn shifted_sum_certificate(
    g: &Ordinal,
    a: &Ordinal,
    b: &Ordinal,
) -> Result<Option<SumCertificate>> {
    decompose(g, a, b, false)
}

pub fn is_shifted_sum(g: &Ordinal, a: &Ordinal, b: &Ordinal) -> Result<bool> {
    Ok(shifted_sum_certificate(g, a, b)?.is_some())
}

/// Like [`shifted_sum_certificate`] but for disjoint `I`, `J`: positions
/// with item 0 cover a single point, so both sides cannot be exact there.
pub fn mixed_sum_certificate(
    g: &Ordinal,
    a: &Ordinal,
    b: &Ordinal,
) -> Result<Option<SumCertificate>> {
    decompose(g, a, b, true)
}

pub fn is_mixed_sum(g: &Ordinal, a: &Ordinal, b: &Ordinal) -> Result<bool> {
    Ok(mixed_sum_certificate(g, a, b)?.is_some())
}

/// Enumeration state: consumed prefixes of the two strings plus the bound
/// the next item must not exceed.
type EnumKey = (usize, usize, Option<Exponent>);

struct Enumerator<'a> {
    a: &'a [Exponent],
    b: &'a [Exponent],
    mixed: bool,
    /// Completions per state: every valid remainder of the candidate string.
    memo: HashMap<EnumKey, BTreeSet<Vec<Exponent>>>,
}

impl<'a> Enumerator<'a> {
    fn complete(
        &mut self,
        pa: usize,
        pb: usize,
        cap: Option<&Exponent>,
    ) -> BTreeSet<Vec<Exponent>> {
        let key = (pa, pb, cap.cloned());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let (a_items, b_items) = (self.a, self.b);
        let mut out = BTreeSet::new();
        if pa == a_items.len() && pb == b_items.len() {
            out.insert(Vec::new());
            self.memo.insert(key, out.clone());
            return out;
        }
        // The next item must be the head of at least one string.
        let mut candidates: BTreeSet<&'a Exponent> = BTreeSet::new();
        for head in [a_items.get(pa), b_items.get(pb)].into_iter().flatten() {
            if cap.is_none_or(|c| head <= c) {
                candidates.insert(head);
            }
        }
        for eta in candidates {
            let push_all = |subs: BTreeSet<Vec<Exponent>>, out: &mut BTreeSet<Vec<Exponent>>| {
                for suffix in subs {
                    let mut s = Vec::with_capacity(suffix.len() + 1);
                    s.push(eta.clone());
                    s.extend(suffix);
                    out.insert(s);
                }
            };
            if a_items.get(pa) == Some(eta) {
                for lb in 0..=run_len(b_items, pb, eta) {
                    let subs = self.complete(pa + 1, pb + lb, Some(eta));
                    push_all(subs, &mut out);
                }
            }
            if b_items.get(pb) == Some(eta) {
                for la in 0..=run_len(a_items, pa, eta) {
                    let subs = self.complete(pa + la, pb + 1, Some(eta));
                    push_all(subs, &mut out);
                }
            }
            if (!self.mixed || !eta.is_zero())
                && a_items.get(pa) == Some(eta)
                && b_items.get(pb) == Some(eta)
            {
                let subs = self.complete(pa + 1, pb + 1, Some(eta));
                push_all(subs, &mut out);
            }
        }
        self.memo.insert(key, out.clone());
        out
    }
}

fn enumerate(a: &Ordinal, b: &Ordinal, mixed: bool) -> Result<BTreeSet<Ordinal>> {
    check_nonzero(if mixed { "mixed_sums" } else { "shifted_sums" }, &[a, b])?;
    let sa = sigma(a)?;
    let sb = sigma(b)?;
    if sa.len() + sb.len() > ENUMERATION_CAP {
        return Err(Error::SizeLimit(format!(
            "sum enumeration over {} string items (cap {ENUMERATION_CAP})",
            sa.len() + sb.len()
        )));
    }
    let mut en = Enumerator { a: sa.items(), b: sb.items(), mixed, memo: HashMap::new() };
    let strings = en.complete(0, 0, None);
    Ok(strings
        .into_iter()
        .map(|items| delta(&SigmaString::from_items(items)))
        .collect())
}

/// The complete finite set of order types of `I ∪ J` over all `I`, `J` with
/// order types `a`, `b` (overlap allowed). Its minimum is `max(a, b)` and
/// its maximum the natural sum.
pub fn shifted_sums(a: &Ordinal, b: &Ordinal) -> Result<BTreeSet<Ordinal>> {
    enumerate(a, b, false)
}

/// Order types of disjoint unions; a subset of [`shifted_sums`], identical
/// whenever the results are limit ordinals.
pub fn mixed_sums(a: &Ordinal, b: &Ordinal) -> Result<BTreeSet<Ordinal>> {
    enumerate(a, b, true)
}

/// Smallest order type of a disjoint union of copies of `a` and `b`:
/// with `a = a• + n` and `b = b• + p` split at the limit parts, the minimum
/// is `a• + n + p` when the limit parts coincide and `max(a, b)` otherwise.
pub fn min_mixed_sum(a: &Ordinal, b: &Ordinal) -> Result<Ordinal> {
    check_nonzero("min_mixed_sum", &[a, b])?;
    let la = a.limit_part();
    let lb = b.limit_part();
    if la == lb {
        la.add(&Ordinal::from_nat(a.nat_tail() + b.nat_tail()))
    } else {
        Ok(std::cmp::max(a, b).clone())
    }
}

/// `a` split before its final CNF copy: the value with one copy of the last
/// term removed, and that term's exponent.
fn last_split(a: &Ordinal) -> (Ordinal, Exponent) {
    let (e, c) = a.terms().last().expect("nonzero value");
    let mut terms = a.terms().to_vec();
    if *c > 1 {
        terms.last_mut().expect("nonempty").1 = c - 1;
    } else {
        terms.pop();
    }
    (Ordinal::from_terms_unchecked(terms), e.clone())
}

/// Terms of `s` with exponent ≥ `e`.
fn restrict_at_least(s: &Ordinal, e: &Exponent) -> Ordinal {
    let terms = s.terms().iter().take_while(|(f, _)| f >= e).cloned().collect();
    Ordinal::from_terms_unchecked(terms)
}

/// Least strict upper bound of `x ⊕ d` over all `x < l`, for limit `l`.
///
/// Splitting `l = x_l + ω^E`, the values `x ⊕ d` for `x < l` are cofinal in
/// `(x_l ⊕ d)` cut below `ω^E` and topped with `ω^E` again: smaller terms of
/// the natural sum are washed out as `x` grows, so the sup is
/// `(x_l ⊕ d)_{≥E} + ω^E` (generally not attained).
pub fn nsup(l: &Ordinal, d: &Ordinal) -> Result<Ordinal> {
    if !l.is_limit() {
        return Err(Error::NotALimit(l.to_string()));
    }
    let (xl, e) = last_split(l);
    let s = xl.natural_sum(d)?;
    restrict_at_least(&s, &e).natural_sum(&Ordinal::single(e, 1))
}

/// The star sum `a +* b`: least strict upper bound of the shifted sums of
/// `a′` and `b′` over all `a′ < a`, `b′ < b` — equivalently of the natural
/// sums `a′ ⊕ b′`.
///
/// With both arguments split before their final copies, every mixed term
/// below the larger of the two final exponents `E` is washed out, giving
/// `(x_a ⊕ x_b)_{≥E} + ω^E`. For two successors this is `(a−1) ⊕ (b−1) + 1`
/// (attained); otherwise it is a sup.
pub fn star_sum(a: &Ordinal, b: &Ordinal) -> Result<Ordinal> {
    check_nonzero("star_sum", &[a, b])?;
    let (xa, ea) = last_split(a);
    let (xb, eb) = last_split(b);
    let e = std::cmp::max(ea, eb);
    let s = xa.natural_sum(&xb)?;
    restrict_at_least(&s, &e).natural_sum(&Ordinal::single(e, 1))
}

/// The canonical interval decomposition of `[0, g)`: with
/// `σ(g) = η_h … η_0` and partial sums `γ_i = ω^{η_h} + … + ω^{η_i}`, the
/// intervals `K_i = [γ_{i+1}, γ_i)` (here `γ_{h+1} = 0`) partition `[0, g)`
/// and `K_i` has order type `ω^{η_i}`. Returned ascending, as `(lo, hi)`
/// pairs.
pub fn k_decomposition(g: &Ordinal) -> Result<Vec<(Ordinal, Ordinal)>> {
    check_nonzero("k_decomposition", &[g])?;
    let s = sigma(g)?;
    let mut out = Vec::with_capacity(s.len());
    let mut lo = Ordinal::zero();
    for e in s.items() {
        let hi = lo.add(&Ordinal::single(e.clone(), 1))?;
        out.push((lo.clone(), hi.clone()));
        lo = hi;
    }
    Ok(out)
}
