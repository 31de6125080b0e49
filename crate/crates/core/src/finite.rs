//! Exhaustive ground truth on finite set systems.
//!
//! A [`FiniteSpace`] is a finite point set with a nonempty family of
//! subsets.  Compactness of a window `[m, n]` means: every length-`n`
//! sequence over the family (repetition allowed) whose union is the whole
//! point set has a covering subsequence indexed by fewer than `m`
//! positions.  Everything here is decided by brute force, so the results
//! serve as oracles for the symbolic machinery on its finite fragment.
//!
//! Cover sequences only matter through their set of distinct members: any
//! selection of `1..=n` distinct sets is realized by some length-`n`
//! sequence, and a sub-selection of size `s` yields an index set of size
//! `s`.  The checker therefore enumerates combinations instead of the
//! `k^n` raw sequences.

use serde::{Deserialize, Serialize};

use crate::catalog::SBetaVariant;
use crate::ordinal::Ordinal;
use crate::{Error, Result};

/// Point-count ceiling for the plain constructor.
pub const DEFAULT_MAX_POINTS: usize = 6;
/// Absolute ceiling: points index bits of a `u64` mask.
const HARD_MAX_POINTS: usize = 64;
/// Closure and product constructions refuse to grow past this many sets.
const FAMILY_CAP: usize = 4096;

/// A finite point set with a family of subsets, stored as bit masks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpaceRepr", into = "SpaceRepr")]
pub struct FiniteSpace {
    points: usize,
    family: Vec<u64>,
}

/// Serialized shape: explicit point lists instead of masks.
#[derive(Serialize, Deserialize)]
struct SpaceRepr {
    points: usize,
    family: Vec<Vec<u8>>,
}

impl From<FiniteSpace> for SpaceRepr {
    fn from(s: FiniteSpace) -> Self {
        let family = s
            .family
            .iter()
            .map(|&m| (0..s.points as u8).filter(|p| m >> p & 1 == 1).collect())
            .collect();
        SpaceRepr { points: s.points, family }
    }
}

impl TryFrom<SpaceRepr> for FiniteSpace {
    type Error = Error;

    fn try_from(r: SpaceRepr) -> Result<Self> {
        let mut family = Vec::with_capacity(r.family.len());
        for set in &r.family {
            let mut mask = 0u64;
            for &p in set {
                if usize::from(p) >= r.points {
                    return Err(Error::Invalid(format!(
                        "point {p} outside a {}-point space",
                        r.points
                    )));
                }
                mask |= 1 << p;
            }
            family.push(mask);
        }
        FiniteSpace::with_limit(r.points, family, HARD_MAX_POINTS)
    }
}

impl FiniteSpace {
    /// A space with at most [`DEFAULT_MAX_POINTS`] points.
    pub fn new(points: usize, family: Vec<u64>) -> Result<Self> {
        Self::with_limit(points, family, DEFAULT_MAX_POINTS)
    }

    /// A space under an explicit point-count ceiling (at most 64).
    pub fn with_limit(points: usize, family: Vec<u64>, limit: usize) -> Result<Self> {
        if points == 0 || points > limit.min(HARD_MAX_POINTS) {
            return Err(Error::Invalid(format!(
                "point count {points} outside 1..={}",
                limit.min(HARD_MAX_POINTS)
            )));
        }
        if family.is_empty() {
            return Err(Error::Invalid("empty set family".into()));
        }
        let full = full_mask(points);
        if family.iter().any(|&m| m & !full != 0) {
            return Err(Error::Invalid("family member outside the point set".into()));
        }
        Ok(FiniteSpace { points, family })
    }

    /// The discrete space on `n` points: every subset is in the family.
    pub fn discrete(points: usize) -> Result<Self> {
        let family = (0..1u64 << points).collect();
        Self::new(points, family)
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn family(&self) -> &[u64] {
        &self.family
    }

    fn full(&self) -> u64 {
        full_mask(self.points)
    }

    /// Whether the union of any two members is again a member.  For a
    /// finite family this is the same as closure under arbitrary unions.
    pub fn is_union_closed(&self) -> bool {
        self.family.iter().all(|&a| {
            self.family.iter().all(|&b| self.family.contains(&(a | b)))
        })
    }

    /// Whether every member stays in the family after removing a point.
    /// Iterating gives closure under removal of arbitrary subsets, the
    /// finite form of point-separation.
    pub fn is_t1(&self) -> bool {
        self.family.iter().all(|&o| {
            (0..self.points).all(|p| o >> p & 1 == 0 || self.family.contains(&(o & !(1 << p))))
        })
    }

    /// Brute-force `[m, n]`-compactness.
    pub fn is_compact_bruteforce(&self, m: usize, n: usize) -> bool {
        if m > n {
            // Any covering selection indexes at most n < m positions.
            return true;
        }
        let full = self.full();
        let mut ok = true;
        self.for_each_selection(n, &mut |sel| {
            if union_of(sel) == full && min_cover(sel, full) >= m {
                ok = false;
            }
            ok
        });
        ok
    }

    /// Walk every selection of `1..=n` distinct family members, stopping
    /// early once the callback returns `false`.
    fn for_each_selection(&self, n: usize, visit: &mut impl FnMut(&[u64]) -> bool) {
        let mut sel: Vec<u64> = Vec::with_capacity(n);
        self.selections_from(0, n, &mut sel, visit);
    }

    fn selections_from(
        &self,
        start: usize,
        n: usize,
        sel: &mut Vec<u64>,
        visit: &mut impl FnMut(&[u64]) -> bool,
    ) -> bool {
        if sel.len() == n {
            return true;
        }
        for i in start..self.family.len() {
            sel.push(self.family[i]);
            let keep = visit(sel) && self.selections_from(i + 1, n, sel, visit);
            sel.pop();
            if !keep {
                return false;
            }
        }
        true
    }

    /// The compactness check restricted to irredundant sequences: each
    /// member must contain a point missed by all earlier ones.
    pub fn compact_by_irredundant(&self, m: usize, n: usize) -> bool {
        let full = self.full();
        let mut chosen: Vec<u64> = Vec::new();
        self.irredundant_from(0, full, m, n, &mut chosen)
    }

    fn irredundant_from(
        &self,
        covered: u64,
        full: u64,
        m: usize,
        n: usize,
        chosen: &mut Vec<u64>,
    ) -> bool {
        if covered == full {
            return min_cover(chosen, full) < m;
        }
        if chosen.len() == n {
            return true;
        }
        for &o in &self.family {
            if o & !covered == 0 {
                continue;
            }
            chosen.push(o);
            let ok = self.irredundant_from(covered | o, full, m, n, chosen);
            chosen.pop();
            if !ok {
                return false;
            }
        }
        true
    }

    /// Whether the irredundant restriction agrees with the full check.
    pub fn irredundant_equiv_check(&self, m: usize, n: usize) -> bool {
        self.compact_by_irredundant(m, n) == self.is_compact_bruteforce(m, n)
    }

    /// Compactness with an explicit winner family: every covering
    /// length-`z_size` sequence must have some `w ∈ W` whose positions
    /// already cover.  The `[m, n]` notion is the special case where `W`
    /// is all position sets of size below `m`.
    pub fn is_wz_compact(&self, z_size: usize, w: &[Vec<usize>]) -> Result<bool> {
        for positions in w {
            if positions.iter().any(|&p| p >= z_size) {
                return Err(Error::Invalid(format!(
                    "winner position outside 0..{z_size}"
                )));
            }
        }
        let k = self.family.len();
        if k.pow(z_size as u32) > 2_000_000 {
            return Err(Error::Invalid("winner check too large to enumerate".into()));
        }
        let full = self.full();
        let mut seq = vec![0usize; z_size];
        loop {
            let union: u64 = seq.iter().map(|&i| self.family[i]).fold(0, |a, b| a | b);
            if union == full {
                let won = w.iter().any(|positions| {
                    positions
                        .iter()
                        .map(|&p| self.family[seq[p]])
                        .fold(0, |a, b| a | b)
                        == full
                });
                if !won {
                    return Ok(false);
                }
            }
            // Odometer step through the k^z_size sequences.
            let mut i = 0;
            loop {
                if i == z_size {
                    return Ok(true);
                }
                seq[i] += 1;
                if seq[i] < k {
                    break;
                }
                seq[i] = 0;
                i += 1;
            }
        }
    }
}

fn full_mask(points: usize) -> u64 {
    if points == 64 { u64::MAX } else { (1 << points) - 1 }
}

fn union_of(sets: &[u64]) -> u64 {
    sets.iter().fold(0, |a, &b| a | b)
}

/// Smallest number of members of `sets` whose union is `full`
/// (`usize::MAX` when none is).
fn min_cover(sets: &[u64], full: u64) -> usize {
    let mut best = usize::MAX;
    for pick in 0u32..1 << sets.len() {
        if (pick.count_ones() as usize) < best {
            let union = sets
                .iter()
                .enumerate()
                .filter(|(i, _)| pick >> i & 1 == 1)
                .fold(0, |a, (_, &b)| a | b);
            if union == full {
                best = pick.count_ones() as usize;
            }
        }
    }
    best
}

// ---------------------------------------------------------------------------
// Combinatorial cover spaces
// ---------------------------------------------------------------------------

/// The space of subsets of `0..alpha` of size below `beta`, with the
/// canonical family `Z(ε) = { x : ε ∉ x }` and optional closure.
///
/// A sub-family `{Z(ε)}_{ε ∈ H}` covers exactly when `|H| ≥ beta`: a point
/// `x` escapes the cover iff `H ⊆ x`, which needs `|x| ≥ |H|`.
pub fn construct_s_beta_space(
    beta: usize,
    alpha: usize,
    variant: SBetaVariant,
) -> Result<FiniteSpace> {
    if beta == 0 || beta > alpha || alpha > 6 {
        return Err(Error::Invalid(format!(
            "need 0 < beta <= alpha <= 6, got beta={beta} alpha={alpha}"
        )));
    }
    let point_sets: Vec<u32> =
        (0..1u32 << alpha).filter(|s| (s.count_ones() as usize) < beta).collect();
    let points = point_sets.len();
    let z = |eps: usize| -> u64 {
        point_sets
            .iter()
            .enumerate()
            .filter(|(_, s)| *s >> eps & 1 == 0)
            .fold(0u64, |m, (i, _)| m | 1 << i)
    };
    let base: Vec<u64> = (0..alpha).map(z).collect();
    let family = match variant {
        SBetaVariant::Plain => base,
        SBetaVariant::Unions => close_family(base, false)?,
        SBetaVariant::Topology => close_family(base, true)?,
        SBetaVariant::Tychonoff => {
            // Finite products of discrete factors are discrete.
            if points > 12 {
                return Err(Error::Invalid(format!(
                    "{points}-point full-power family too large"
                )));
            }
            (0..1u64 << points).collect()
        }
    };
    FiniteSpace::with_limit(points, family, HARD_MAX_POINTS)
}

/// Close a family under binary unions (and intersections when asked).
fn close_family(mut family: Vec<u64>, intersections: bool) -> Result<Vec<u64>> {
    let mut next = 0;
    while next < family.len() {
        let a = family[next];
        next += 1;
        for i in 0..next {
            let b = family[i];
            for candidate in [a | b, a & b] {
                if (candidate == a & b && !intersections) || family.contains(&candidate) {
                    continue;
                }
                family.push(candidate);
            }
            if family.len() > FAMILY_CAP {
                return Err(Error::Invalid("family closure too large".into()));
            }
        }
    }
    Ok(family)
}

// ---------------------------------------------------------------------------
// Injection criterion sweep
// ---------------------------------------------------------------------------

/// One `(alpha, beta)` cell of the injection-criterion sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Iff1Row {
    pub alpha: usize,
    pub beta: usize,
    /// Brute force: the cover space is not `[alpha, alpha]`-compact.
    pub not_compact: bool,
    /// Some size-`beta` subset of `alpha` meets every proper subset in
    /// fewer than `beta` elements.
    pub injection_found: bool,
}

/// Sweep report; clean when both criteria agree everywhere.
#[derive(Debug, Clone, Serialize)]
pub struct Iff1Report {
    pub rows: Vec<Iff1Row>,
}

impl Iff1Report {
    pub fn mismatches(&self) -> Vec<&Iff1Row> {
        self.rows.iter().filter(|r| r.not_compact != r.injection_found).collect()
    }

    pub fn is_clean(&self) -> bool {
        self.mismatches().is_empty()
    }
}

/// Compare incompactness of the cover spaces against the injection
/// criterion for all `1 ≤ beta ≤ alpha` within the bounds.
///
/// An injection of `beta` into `alpha` matters only through its image, so
/// the search runs over size-`beta` subsets: the criterion asks that every
/// proper `K ⊂ alpha` pull back to fewer than `beta` image elements.
pub fn iff1_finite_check(alpha_max: usize, beta_max: usize) -> Result<Iff1Report> {
    let mut rows = Vec::new();
    for alpha in 1..=alpha_max {
        for beta in 1..=alpha.min(beta_max) {
            let space = construct_s_beta_space(beta, alpha, SBetaVariant::Plain)?;
            let not_compact = !space.is_compact_bruteforce(alpha, alpha);
            let injection_found = (0..1u32 << alpha)
                .filter(|im| im.count_ones() as usize == beta)
                .any(|im| {
                    (0..1u32 << alpha)
                        .filter(|k| (k.count_ones() as usize) < alpha)
                        .all(|k| ((im & k).count_ones() as usize) < beta)
                });
            rows.push(Iff1Row { alpha, beta, not_compact, injection_found });
        }
    }
    Ok(Iff1Report { rows })
}

// ---------------------------------------------------------------------------
// Unions of spaces
// ---------------------------------------------------------------------------

/// Disjoint union: both families survive as-is (padded with nothing on the
/// other side), plus every pairwise union across the two parts.
pub fn disjoint_union(a: &FiniteSpace, b: &FiniteSpace) -> Result<FiniteSpace> {
    let points = a.points + b.points;
    let shift = |m: u64| m << a.points;
    let mut family: Vec<u64> = Vec::new();
    let mut push = |m: u64| {
        if !family.contains(&m) {
            family.push(m);
        }
    };
    for &oa in &a.family {
        push(oa);
    }
    for &ob in &b.family {
        push(shift(ob));
    }
    for &oa in &a.family {
        for &ob in &b.family {
            push(oa | shift(ob));
        }
    }
    FiniteSpace::with_limit(points, family, HARD_MAX_POINTS)
}

/// Finite-support union: every choice of one member (or the full part) per
/// part, all unioned.  With finitely many parts the support restriction is
/// vacuous, so this is the full choice product.
pub fn frechet_union(parts: &[FiniteSpace]) -> Result<FiniteSpace> {
    if parts.is_empty() {
        return Err(Error::Invalid("union of no spaces".into()));
    }
    let points: usize = parts.iter().map(|p| p.points).sum();
    let mut family: Vec<u64> = vec![0];
    let mut offset = 0usize;
    for part in parts {
        let mut grown = Vec::with_capacity(family.len() * (part.family.len() + 1));
        for &prefix in &family {
            for choice in part.family.iter().copied().chain([part.full()]) {
                let m = prefix | choice << offset;
                if !grown.contains(&m) {
                    grown.push(m);
                }
            }
            if grown.len() > FAMILY_CAP {
                return Err(Error::Invalid("union family too large".into()));
            }
        }
        family = grown;
        offset += part.points;
    }
    FiniteSpace::with_limit(points, family, HARD_MAX_POINTS)
}

// ---------------------------------------------------------------------------
// Deterministic corpus and records
// ---------------------------------------------------------------------------

/// Every space with at most `max_points` points and a family of at most
/// `max_family` distinct subsets, in a fixed enumeration order.
pub fn corpus(max_points: usize, max_family: usize) -> Vec<FiniteSpace> {
    let mut out = Vec::new();
    for points in 1..=max_points.min(DEFAULT_MAX_POINTS) {
        let subsets: Vec<u64> = (0..1u64 << points).collect();
        let mut pick: Vec<u64> = Vec::new();
        families_from(&subsets, 0, max_family, &mut pick, &mut |fam| {
            out.push(FiniteSpace { points, family: fam.to_vec() });
        });
    }
    out
}

fn families_from(
    subsets: &[u64],
    start: usize,
    room: usize,
    pick: &mut Vec<u64>,
    visit: &mut impl FnMut(&[u64]),
) {
    for i in start..subsets.len() {
        pick.push(subsets[i]);
        visit(pick);
        if room > 1 {
            families_from(subsets, i + 1, room - 1, pick, visit);
        }
        pick.pop();
    }
}

/// One line of the oracle output: a space, a window, a verdict.
#[derive(Debug, Clone, Serialize)]
pub struct OracleRecord {
    pub space: FiniteSpace,
    pub m: usize,
    pub n: usize,
    pub compact: bool,
}

/// The full sweep over the corpus, in corpus-then-window order.
pub fn sweep(max_points: usize, max_family: usize, max_mn: usize) -> Vec<OracleRecord> {
    let mut out = Vec::new();
    for space in corpus(max_points, max_family) {
        for m in 1..=max_mn {
            for n in 1..=max_mn {
                let compact = space.is_compact_bruteforce(m, n);
                out.push(OracleRecord { space: space.clone(), m, n, compact });
            }
        }
    }
    out
}

/// The window `{max(a,b), …, a+b}` that shifted sums produce on naturals.
pub fn natural_shift_window(a: usize, b: usize) -> Result<Vec<usize>> {
    let sums = crate::sums::shifted_sums(&Ordinal::from_nat(a as u64), &Ordinal::from_nat(b as u64))?;
    sums.into_iter()
        .map(|g| {
            g.as_nat()
                .map(|v| v as usize)
                .ok_or_else(|| Error::Invalid("shifted sum of naturals must be natural".into()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{
        implies_compactness, ImplicationQuery, OrdinalInterval, SpaceClass, Verdict,
    };
    use crate::ordinal::CardClass;
    use crate::sums::star_sum;

    fn space(points: usize, family: &[u64]) -> FiniteSpace {
        FiniteSpace::new(points, family.to_vec()).unwrap()
    }

    /// Literal sequence semantics, for cross-checking the selection walk.
    fn compact_by_sequences(s: &FiniteSpace, m: usize, n: usize) -> bool {
        let k = s.family().len();
        let full = (1u64 << s.points()) - 1;
        let mut seq = vec![0usize; n];
        loop {
            let union: u64 = seq.iter().map(|&i| s.family()[i]).fold(0, |a, b| a | b);
            if union == full {
                let mut found = false;
                for pick in 0u32..1 << n {
                    if (pick.count_ones() as usize) < m {
                        let u = seq
                            .iter()
                            .enumerate()
                            .filter(|(j, _)| pick >> j & 1 == 1)
                            .map(|(_, &i)| s.family()[i])
                            .fold(0, |a, b| a | b);
                        if u == full {
                            found = true;
                            break;
                        }
                    }
                }
                if !found {
                    return false;
                }
            }
            let mut i = 0;
            loop {
                if i == n {
                    return true;
                }
                seq[i] += 1;
                if seq[i] < k {
                    break;
                }
                seq[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn two_point_discrete_cover_has_no_singleton_subcover() {
        let s = space(2, &[0b01, 0b10]);
        assert!(!s.is_compact_bruteforce(2, 2));
        assert!(s.is_compact_bruteforce(3, 2));
        // One big open: a singleton subcover always exists.
        let whole = space(2, &[0b11]);
        assert!(whole.is_compact_bruteforce(2, 3));
        assert!(!whole.is_compact_bruteforce(1, 3));
    }

    #[test]
    fn window_larger_than_cover_length_is_trivial() {
        for s in corpus(2, 3) {
            for n in 1..=3 {
                assert!(s.is_compact_bruteforce(n + 1, n));
            }
        }
    }

    #[test]
    fn selection_walk_matches_sequence_semantics() {
        for s in corpus(2, 3) {
            for m in 1..=3 {
                for n in 1..=3 {
                    assert_eq!(
                        s.is_compact_bruteforce(m, n),
                        compact_by_sequences(&s, m, n),
                        "space {:?} window [{m}, {n}]",
                        s
                    );
                }
            }
        }
    }

    #[test]
    fn irredundant_restriction_changes_nothing() {
        for s in corpus(3, 4) {
            for m in 1..=4 {
                for n in 1..=4 {
                    assert!(s.irredundant_equiv_check(m, n), "space {s:?} [{m}, {n}]");
                }
            }
        }
        let s = space(2, &[0b01, 0b10]);
        assert!(!s.compact_by_irredundant(2, 2));
        // A singleton space: compact exactly when the window start exceeds 1,
        // since the empty subfamily never covers.
        let single = space(1, &[0b1]);
        for n in 1..=3 {
            assert!(!single.compact_by_irredundant(1, n));
            for m in 2..=3 {
                assert!(single.compact_by_irredundant(m, n));
                assert!(single.is_compact_bruteforce(m, n));
            }
        }
    }

    #[test]
    fn pointwise_windows_agree_with_intervals() {
        for s in corpus(2, 3) {
            for m in 1..=4 {
                for n in m..=4 {
                    let pointwise = (m..=n).all(|g| s.is_compact_bruteforce(g, g));
                    assert_eq!(s.is_compact_bruteforce(m, n), pointwise);
                }
            }
        }
    }

    #[test]
    fn windows_split_at_interior_points() {
        for s in corpus(2, 3) {
            for m in 1..=3 {
                for n in m..=3 {
                    for g in m..=n {
                        let low = (m..g).all(|h| s.is_compact_bruteforce(h, h));
                        let split = low && s.is_compact_bruteforce(g, n);
                        assert_eq!(s.is_compact_bruteforce(m, n), split);
                    }
                }
            }
        }
    }

    #[test]
    fn cover_space_shape_and_cover_criterion() {
        let s = construct_s_beta_space(2, 3, SBetaVariant::Plain).unwrap();
        assert_eq!(s.points(), 4);
        // Points in mask order: {}, {0}, {1}, {2}; Z(0) holds the three
        // that avoid coordinate 0.
        assert_eq!(s.family()[0], 0b1101);
        for alpha in 1..=4 {
            for beta in 1..=alpha {
                let s = construct_s_beta_space(beta, alpha, SBetaVariant::Plain).unwrap();
                let full = (1u64 << s.points()) - 1;
                for h in 0u32..1 << alpha {
                    let union: u64 = (0..alpha)
                        .filter(|e| h >> e & 1 == 1)
                        .map(|e| s.family()[e])
                        .fold(0, |a, b| a | b);
                    assert_eq!(union == full, h.count_ones() as usize >= beta);
                }
            }
        }
        let tiny = construct_s_beta_space(1, 2, SBetaVariant::Plain).unwrap();
        assert_eq!(tiny.points(), 1);
        assert!(tiny.family().iter().all(|&z| z == 0b1));
    }

    #[test]
    fn closed_variants_grow_and_flag_accordingly() {
        let plain = construct_s_beta_space(2, 3, SBetaVariant::Plain).unwrap();
        assert!(!plain.is_union_closed());
        let unions = construct_s_beta_space(2, 3, SBetaVariant::Unions).unwrap();
        assert!(unions.is_union_closed());
        assert!(unions.family().len() > plain.family().len());
        let tych = construct_s_beta_space(2, 3, SBetaVariant::Tychonoff).unwrap();
        assert!(tych.is_union_closed());
        assert!(tych.is_t1());
    }

    #[test]
    fn injection_criterion_matches_brute_force() {
        let report = iff1_finite_check(3, 3).unwrap();
        assert!(report.is_clean());
        for row in &report.rows {
            // Only the diagonal admits the escape injection.
            assert_eq!(row.injection_found, row.alpha == row.beta);
        }
        let cell = report.rows.iter().find(|r| r.alpha == 3 && r.beta == 2).unwrap();
        assert!(!cell.not_compact);
        assert!(!cell.injection_found);
    }

    #[test]
    fn union_of_singletons_is_the_three_set_family() {
        let a = space(1, &[0b1]);
        let b = space(1, &[0b1]);
        let du = disjoint_union(&a, &b).unwrap();
        assert_eq!(du.points(), 2);
        assert_eq!(du.family(), &[0b01, 0b10, 0b11]);
    }

    #[test]
    fn union_compactness_adds_like_stars() {
        let spaces = corpus(2, 3);
        for s1 in &spaces {
            for s2 in &spaces {
                let du = disjoint_union(s1, s2).unwrap();
                for n in 1..=3 {
                    for m1 in 1..=3 {
                        for m2 in 1..=3 {
                            if s1.is_compact_bruteforce(m1, n)
                                && s2.is_compact_bruteforce(m2, n)
                            {
                                assert!(
                                    du.is_compact_bruteforce(m1 + m2 - 1, n),
                                    "{s1:?} + {s2:?} at [{m1}+{m2}-1, {n}]"
                                );
                            }
                        }
                    }
                }
            }
        }
        // The symbolic star sum freezes the same finite formula.
        for m1 in 1..=4u64 {
            for m2 in 1..=4u64 {
                assert_eq!(
                    star_sum(&Ordinal::from_nat(m1), &Ordinal::from_nat(m2)).unwrap(),
                    Ordinal::from_nat(m1 + m2 - 1)
                );
            }
        }
    }

    #[test]
    fn union_incompactness_spreads_over_the_shift_window() {
        let spaces: Vec<FiniteSpace> = corpus(2, 2);
        for s1 in &spaces {
            for s2 in &spaces {
                let du = disjoint_union(s1, s2).unwrap();
                for n in 1..=2 {
                    for a in 1..=2 {
                        for b in 1..=2 {
                            if !s1.is_compact_bruteforce(a, n)
                                && !s2.is_compact_bruteforce(b, n)
                            {
                                for c in natural_shift_window(a, b).unwrap() {
                                    assert!(
                                        !du.is_compact_bruteforce(c, 2 * n),
                                        "{s1:?} + {s2:?} at [{c}, {}]",
                                        2 * n
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(natural_shift_window(2, 3).unwrap(), vec![3, 4, 5]);
    }

    #[test]
    fn finite_support_union_keeps_removal_closure() {
        // Two points, removal-closed family containing the whole space.
        let part = space(2, &[0b00, 0b01, 0b10, 0b11]);
        assert!(part.is_t1());
        let fu = frechet_union(&[part.clone(), part]).unwrap();
        assert_eq!(fu.points(), 4);
        assert!(fu.is_t1());
        assert!(fu.family().contains(&0b1111));
    }

    #[test]
    fn winner_families_generalize_windows() {
        let s = space(2, &[0b01, 0b10]);
        assert!(!s.is_wz_compact(2, &[vec![0], vec![1]]).unwrap());
        assert!(s.is_wz_compact(2, &[vec![0, 1]]).unwrap());
        assert!(s.is_wz_compact(2, &[]).is_ok());
        assert!(s.is_wz_compact(2, &[vec![5]]).is_err());
        for sp in corpus(2, 3) {
            for m in 1..=3 {
                for z in 1..=3 {
                    let w: Vec<Vec<usize>> = (0u32..1 << z)
                        .filter(|pick| (pick.count_ones() as usize) < m)
                        .map(|pick| (0..z).filter(|i| pick >> i & 1 == 1).collect())
                        .collect();
                    assert_eq!(
                        sp.is_wz_compact(z, &w).unwrap(),
                        sp.is_compact_bruteforce(m, z),
                        "space {sp:?} m={m} z={z}"
                    );
                }
            }
        }
    }

    #[test]
    fn discrete_spaces_match_the_symbolic_catalog() {
        use crate::catalog::SpaceDescr;
        for n in 1..=3 {
            let brute = FiniteSpace::discrete(n).unwrap();
            let descr = SpaceDescr::Discrete { card: CardClass::Finite(n as u64) };
            for m in 1..=4 {
                for g in m..=4 {
                    let verdict = descr
                        .is_compact(&Ordinal::from_nat(m as u64), &Ordinal::from_nat(g as u64))
                        .unwrap();
                    assert_eq!(verdict.is_yes(), brute.is_compact_bruteforce(m, g));
                }
            }
        }
    }

    #[test]
    fn implied_finite_queries_hold_on_the_whole_corpus() {
        let spaces = corpus(2, 3);
        let classes = [
            SpaceClass::Arbitrary,
            SpaceClass::UnionClosed,
            SpaceClass::T1,
            SpaceClass::CardBound(CardClass::Aleph0),
            SpaceClass::CardBoundUnionClosed(CardClass::Aleph0),
        ];
        let admits = |class: SpaceClass, s: &FiniteSpace| match class {
            SpaceClass::Arbitrary | SpaceClass::CardBound(_) => true,
            SpaceClass::UnionClosed | SpaceClass::CardBoundUnionClosed(_) => s.is_union_closed(),
            SpaceClass::T1 | SpaceClass::LambdaT1(_) => s.is_t1(),
        };
        let mut implications = 0usize;
        for a in 1..=4u64 {
            for b in a..=4 {
                for c in 1..=4u64 {
                    for d in c..=4 {
                        for class in classes {
                            let q = ImplicationQuery::new(
                                OrdinalInterval::closed(Ordinal::from_nat(a), Ordinal::from_nat(b))
                                    .unwrap(),
                                OrdinalInterval::closed(Ordinal::from_nat(c), Ordinal::from_nat(d))
                                    .unwrap(),
                                class,
                            );
                            let Verdict::Implied { .. } = implies_compactness(&q).unwrap() else {
                                continue;
                            };
                            implications += 1;
                            for s in spaces.iter().filter(|s| admits(class, s)) {
                                let src = (a..=b)
                                    .all(|g| s.is_compact_bruteforce(g as usize, g as usize));
                                let dst = (c..=d)
                                    .all(|g| s.is_compact_bruteforce(g as usize, g as usize));
                                assert!(
                                    !src || dst,
                                    "{s:?} refutes [{a},{b}] => [{c},{d}] under {class}"
                                );
                            }
                        }
                    }
                }
            }
        }
        assert!(implications > 100, "only {implications} implied finite queries");
    }

    #[test]
    fn records_serialize_deterministically() {
        let records = sweep(2, 2, 2);
        let lines: Vec<String> =
            records.iter().map(|r| serde_json::to_string(r).unwrap()).collect();
        let again: Vec<String> =
            sweep(2, 2, 2).iter().map(|r| serde_json::to_string(r).unwrap()).collect();
        assert_eq!(lines, again);
        assert!(lines[0].contains("\"compact\""));
        let back: FiniteSpace =
            serde_json::from_str(&serde_json::to_string(&records[0].space).unwrap()).unwrap();
        assert_eq!(back, records[0].space);
        assert!(serde_json::from_str::<FiniteSpace>("{\"points\":1,\"family\":[[3]]}").is_err());
    }
}
