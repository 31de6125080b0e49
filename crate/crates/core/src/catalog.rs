//! Catalog of symbolic example spaces with interval-compactness verdicts.
//!
//! A [`SpaceDescr`] names a space built from a handful of primitives —
//! discrete sets, initial-interval topologies, order topologies, the
//! square `κ·κ` with its column-interval family, the zero-set families
//! over small-support binary functions, and (Frechet) disjoint unions.
//!
//! [`SpaceDescr::is_compact`] answers queries "is the space `[β, α]`-compact"
//! (every `α`-indexed open cover has a subcover whose index set has order
//! type `< β`) with verdicts that cite the deciding rule, or `Unknown`
//! when no encoded rule closes the gap.  Verdicts are deliberately
//! conservative: `Yes`/`No` are only produced by rules that are sound for
//! the descriptor at hand, and the catalog never interpolates between
//! known compactness windows.
//!
//! [`SpaceDescr::lindelof_ordinal`] computes the least `L` such that the
//! space is `[L, ∞)`-compact where that value is expressible; disjoint
//! unions combine summand values with the star sum.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::ordinal::{CardClass, Ordinal};
use crate::sums::{shifted_sums, star_sum};
use crate::{Error, Result};

/// Cap on the size of the shifted-sum witness fold for unions.
const FOLD_CAP: usize = 256;

// ---------------------------------------------------------------------------
// Descriptors
// ---------------------------------------------------------------------------

/// Which family of sets is placed on the small-support function space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SBetaVariant {
    /// Only the zero-sets themselves.
    Plain,
    /// Closure of the zero-sets under arbitrary unions.
    Unions,
    /// Closure under unions and finite intersections.
    Topology,
    /// The product topology restricted to the subspace.
    Tychonoff,
}

/// Symbolic description of an example space.
///
/// Cardinalities are the symbolic classes of [`CardClass`]; ordinal
/// parameters live in the two-tier fragment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SpaceDescr {
    /// Discrete space on a set of the given cardinality.
    Discrete { card: CardClass },
    /// Initial-interval topology on `λ`: opens are `[0, x)` for `x ≤ λ`.
    /// Requires an infinite cardinal.
    Iit { card: CardClass },
    /// Order topology on `λ`; requires an uncountable cardinal.
    Ord { card: CardClass },
    /// Disjoint union; opens are unions of one open per summand.
    DisjointUnion { parts: Vec<SpaceDescr> },
    /// Disjoint union plus one fresh point whose neighborhoods are
    /// co-finite across the summands.
    FrechetDisjointUnion { parts: Vec<SpaceDescr> },
    /// Functions `α → 2` whose support has order type `< β`, carrying the
    /// zero-sets `Z(ε) = {f | f(ε) = 0}` in the chosen variant.
    SBeta { beta: Ordinal, alpha: Ordinal, variant: SBetaVariant },
    /// `κ·κ` with the family `[κ·x, κ·x + y]` for `x, y < κ`.
    KappaKappa,
    /// A base space together with `m` extra isolated points.
    WithFiniteDiscrete { base: Box<SpaceDescr>, m: u64 },
}

/// Structural flags that determine which implication rules apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassProfile {
    /// The open family is closed under arbitrary unions.
    pub union_closed: bool,
    /// Every open set minus a point contains an open neighborhood of each
    /// remaining point (the covering form of the T1 axiom).
    pub t1: bool,
    /// The open family is an actual topology.
    pub topology: bool,
}

/// Answer to an interval-compactness query, citing the deciding rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "rule", rename_all = "snake_case")]
pub enum CompactnessVerdict {
    /// The space is `[β, α]`-compact.
    Yes(&'static str),
    /// The space is not `[β, α]`-compact.
    No(&'static str),
    /// No encoded rule decides the query.
    Unknown,
}

impl CompactnessVerdict {
    pub fn is_yes(self) -> bool {
        matches!(self, CompactnessVerdict::Yes(_))
    }

    pub fn is_no(self) -> bool {
        matches!(self, CompactnessVerdict::No(_))
    }

    pub fn is_unknown(self) -> bool {
        matches!(self, CompactnessVerdict::Unknown)
    }

    /// The rule identifier backing a decided verdict.
    pub fn rule(self) -> Option<&'static str> {
        match self {
            CompactnessVerdict::Yes(r) | CompactnessVerdict::No(r) => Some(r),
            CompactnessVerdict::Unknown => None,
        }
    }
}

/// The least ordinal of the given cardinality class.
fn card_value(c: CardClass) -> Ordinal {
    match c {
        CardClass::Finite(n) => Ordinal::from_nat(n),
        CardClass::Aleph0 => Ordinal::omega(),
        CardClass::Kappa => Ordinal::kappa(),
        CardClass::KappaPlus => Ordinal::kappa_plus(),
    }
}

/// `β ≥ c⁺`, i.e. `β` at least the successor cardinal of `c`.  For `c = κ⁺`
/// this is false for every representable `β`.
fn ge_card_successor(beta: &Ordinal, c: CardClass) -> bool {
    match c {
        CardClass::Finite(n) => *beta > Ordinal::from_nat(n),
        CardClass::Aleph0 => beta.card() >= CardClass::Kappa,
        CardClass::Kappa => beta.card() == CardClass::KappaPlus,
        CardClass::KappaPlus => false,
    }
}

impl SpaceDescr {
    /// Convenience constructor for a disjoint union of `n` copies.
    pub fn copies(part: SpaceDescr, n: usize) -> SpaceDescr {
        SpaceDescr::DisjointUnion { parts: vec![part; n] }
    }

    /// Checks the structural invariants of the descriptor tree.
    pub fn validate(&self) -> Result<()> {
        match self {
            SpaceDescr::Discrete { .. } | SpaceDescr::KappaKappa => Ok(()),
            SpaceDescr::Iit { card } => {
                if card.is_infinite() {
                    Ok(())
                } else {
                    Err(Error::Invalid(format!(
                        "initial-interval space needs an infinite cardinal, got {card}"
                    )))
                }
            }
            SpaceDescr::Ord { card } => {
                if matches!(card, CardClass::Kappa | CardClass::KappaPlus) {
                    Ok(())
                } else {
                    Err(Error::Invalid(format!(
                        "order-topology space needs an uncountable cardinal, got {card}"
                    )))
                }
            }
            SpaceDescr::DisjointUnion { parts } | SpaceDescr::FrechetDisjointUnion { parts } => {
                if parts.is_empty() {
                    return Err(Error::Invalid("disjoint union needs at least one summand".into()));
                }
                parts.iter().try_for_each(SpaceDescr::validate)
            }
            SpaceDescr::SBeta { beta, alpha, .. } => {
                if beta.is_zero() || beta > alpha {
                    return Err(Error::MalformedInterval {
                        lo: beta.to_string(),
                        hi: alpha.to_string(),
                    });
                }
                Ok(())
            }
            SpaceDescr::WithFiniteDiscrete { base, .. } => base.validate(),
        }
    }

    /// Structural flags of the open family.
    pub fn profile(&self) -> ClassProfile {
        let all = |parts: &[SpaceDescr]| {
            parts.iter().map(SpaceDescr::profile).fold(
                ClassProfile { union_closed: true, t1: true, topology: true },
                |a, p| ClassProfile {
                    union_closed: a.union_closed && p.union_closed,
                    t1: a.t1 && p.t1,
                    topology: a.topology && p.topology,
                },
            )
        };
        match self {
            SpaceDescr::Discrete { .. } | SpaceDescr::Ord { .. } => {
                ClassProfile { union_closed: true, t1: true, topology: true }
            }
            // Initial intervals are nested: closed under unions and
            // intersections, but no open separates x from any larger point.
            SpaceDescr::Iit { .. } => {
                ClassProfile { union_closed: true, t1: false, topology: true }
            }
            SpaceDescr::SBeta { variant, .. } => match variant {
                SBetaVariant::Plain => {
                    ClassProfile { union_closed: false, t1: false, topology: false }
                }
                SBetaVariant::Unions => {
                    ClassProfile { union_closed: true, t1: false, topology: false }
                }
                SBetaVariant::Topology => {
                    ClassProfile { union_closed: true, t1: false, topology: true }
                }
                SBetaVariant::Tychonoff => {
                    ClassProfile { union_closed: true, t1: true, topology: true }
                }
            },
            // Column intervals: unions across columns leave the family.
            SpaceDescr::KappaKappa => {
                ClassProfile { union_closed: false, t1: false, topology: false }
            }
            SpaceDescr::DisjointUnion { parts } | SpaceDescr::FrechetDisjointUnion { parts } => {
                all(parts)
            }
            SpaceDescr::WithFiniteDiscrete { base, .. } => base.profile(),
        }
    }

    /// Cardinality of the underlying point set, when it is expressible.
    pub fn space_card(&self) -> Option<CardClass> {
        fn join(a: CardClass, b: CardClass) -> CardClass {
            match (a, b) {
                (CardClass::Finite(x), CardClass::Finite(y)) => {
                    CardClass::Finite(x.saturating_add(y))
                }
                (x, y) => x.max(y),
            }
        }
        match self {
            SpaceDescr::Discrete { card } | SpaceDescr::Iit { card } | SpaceDescr::Ord { card } => {
                Some(*card)
            }
            SpaceDescr::KappaKappa => Some(CardClass::Kappa),
            SpaceDescr::DisjointUnion { parts } => parts
                .iter()
                .map(SpaceDescr::space_card)
                .try_fold(CardClass::Finite(0), |a, c| c.map(|c| join(a, c))),
            SpaceDescr::FrechetDisjointUnion { parts } => parts
                .iter()
                .map(SpaceDescr::space_card)
                .try_fold(CardClass::Finite(1), |a, c| c.map(|c| join(a, c))),
            // The function space is strictly bigger than its index set in a
            // way the cardinal classes cannot express.
            SpaceDescr::SBeta { .. } => None,
            SpaceDescr::WithFiniteDiscrete { base, m } => {
                base.space_card().map(|c| join(c, CardClass::Finite(*m)))
            }
        }
    }

    /// Whether removing any set of fewer than `lam` points from an open set
    /// always leaves an open set.
    ///
    /// The plain separation flag is exactly the `ω` case: where points are
    /// closed, an open survives finitely many punctures.  Past `ω` the
    /// property is rare — a punctured open must not accumulate anywhere —
    /// so the answers are conservative: a `false` never admits a space into
    /// a class it does not belong to.
    pub fn is_lambda_t1(&self, lam: CardClass) -> bool {
        if lam <= CardClass::Aleph0 {
            return self.profile().t1;
        }
        match self {
            // Every subset is open, so punctures are harmless.
            SpaceDescr::Discrete { .. } => true,
            SpaceDescr::DisjointUnion { parts } => parts.iter().all(|p| p.is_lambda_t1(lam)),
            SpaceDescr::WithFiniteDiscrete { base, .. } => base.is_lambda_t1(lam),
            // Order, initial-segment, cofinite and covering-family
            // topologies all have opens that accumulate at surviving
            // points once infinitely many are removed.
            _ => false,
        }
    }

    /// Whether the whole point set belongs to the open family.
    fn has_full_open(&self) -> bool {
        match self {
            SpaceDescr::Discrete { .. } | SpaceDescr::Iit { .. } | SpaceDescr::Ord { .. } => true,
            SpaceDescr::KappaKappa => false,
            // With support bound 1 the space is the single all-zero
            // function, and every zero-set equals it.
            SpaceDescr::SBeta { beta, variant, .. } => {
                *variant != SBetaVariant::Plain || *beta == Ordinal::one()
            }
            SpaceDescr::DisjointUnion { parts } | SpaceDescr::FrechetDisjointUnion { parts } => {
                parts.iter().all(SpaceDescr::has_full_open)
            }
            SpaceDescr::WithFiniteDiscrete { base, .. } => base.has_full_open(),
        }
    }

    /// Interval-compactness query for `[β, α]`.
    pub fn is_compact(&self, beta: &Ordinal, alpha: &Ordinal) -> Result<CompactnessVerdict> {
        self.validate()?;
        if beta.is_zero() || beta > alpha {
            return Err(Error::MalformedInterval { lo: beta.to_string(), hi: alpha.to_string() });
        }
        self.compact_inner(beta, alpha)
    }

    fn compact_inner(&self, beta: &Ordinal, alpha: &Ordinal) -> Result<CompactnessVerdict> {
        use CompactnessVerdict::{No, Unknown, Yes};
        match self {
            // A subcover picking one open per point can be reindexed below
            // the successor cardinal of the size; below it, puncture one
            // singleton per index.
            SpaceDescr::Discrete { card } => {
                if ge_card_successor(beta, *card) {
                    Ok(Yes("discrete.subcover-per-point"))
                } else {
                    Ok(No("discrete.isolated-points"))
                }
            }
            SpaceDescr::Iit { card } => {
                let lambda = card_value(*card);
                if *beta == Ordinal::one() {
                    // The full space is open, so covers of every index
                    // length exist; the empty subfamily covers nothing.
                    Ok(No("iit.full-space-open"))
                } else if *alpha < lambda {
                    // Fewer than cf(λ) proper initial segments never cover,
                    // so any cover contains the full space: a 1-subcover.
                    Ok(Yes("iit.bounded-union-below"))
                } else if *beta > lambda {
                    Ok(Yes("iit.tail-cover-collapses"))
                } else {
                    // β ≤ λ ≤ α: the increasing λ-indexed cover only admits
                    // cofinal subcovers, all of order type λ.
                    Ok(No("iit.increasing-cover"))
                }
            }
            SpaceDescr::Ord { card } => {
                let lambda = card_value(*card);
                let lw = lambda.add(&Ordinal::omega())?;
                if beta.is_finite() {
                    // n sets, each holding a point no other one contains.
                    Ok(No("ord.punctured-tail-cover"))
                } else if *alpha < lambda {
                    Ok(Yes("ord.bounded-cover-below"))
                } else if *beta >= lw {
                    Ok(Yes("ord.club-filter"))
                } else {
                    // Some γ ∈ [β, α] lies in [λ, λ+ω) ∪ {λ}-reachable
                    // range where diagonal covers have no short subcover.
                    Ok(No("ord.diagonal-cover"))
                }
            }
            SpaceDescr::KappaKappa => {
                let kap = Ordinal::kappa();
                // Smallest multiple of κ that is ≥ β.
                let m = if *beta <= kap {
                    kap.clone()
                } else {
                    let (q, r) = beta.div_rem(&kap)?;
                    if r.is_zero() {
                        beta.clone()
                    } else {
                        kap.mul(&q.succ()?)?
                    }
                };
                if m <= *alpha && m.card() == CardClass::Kappa {
                    Ok(No("kk.column-multiple"))
                } else if *alpha < kap {
                    // Every column needs κ bounded intervals, so no cover
                    // has fewer than κ members.
                    Ok(Yes("kk.no-small-covers"))
                } else if *beta >= Ordinal::kappa_plus() {
                    // Only κ distinct opens exist; any subcover reindexes
                    // below κ⁺.
                    Ok(Yes("kk.few-opens"))
                } else {
                    Ok(Yes("kk.nondivisible-window"))
                }
            }
            SpaceDescr::SBeta { beta: b0, alpha: a0, variant } => {
                if beta <= b0 && b0 <= alpha {
                    // A zero-set family covers exactly when its index set
                    // has order type ≥ b0; the canonical b0-cover has no
                    // shorter subcover.
                    return Ok(No("sbeta.cover-order-type"));
                }
                if *variant == SBetaVariant::Plain && a0 == b0 {
                    let cb = b0.card();
                    if alpha.card() < cb || beta.card() > cb {
                        // Injections witnessing failure cannot exist across
                        // a cardinality gap.
                        return Ok(Yes("sbeta.cardinality-gap"));
                    }
                    if beta == alpha {
                        let kap = Ordinal::kappa();
                        let shape = *b0 == kap.mul(&Ordinal::omega())? || *b0 == kap.mul(&kap)?;
                        if shape && *beta == kap.mul(&Ordinal::from_nat(2))? {
                            return Ok(Yes("sbeta.no-collapse-to-double"));
                        }
                        if shape && *beta == kap.mul(&kap)?.add(&kap)? {
                            return Ok(Yes("sbeta.no-collapse-to-square"));
                        }
                    }
                }
                Ok(Unknown)
            }
            SpaceDescr::DisjointUnion { parts } => self.union_compact(parts, beta, alpha),
            SpaceDescr::FrechetDisjointUnion { .. } => Ok(Unknown),
            SpaceDescr::WithFiniteDiscrete { base, m } => {
                if *m == 0 {
                    return base.compact_inner(beta, alpha);
                }
                let expanded = SpaceDescr::DisjointUnion {
                    parts: vec![
                        base.as_ref().clone(),
                        SpaceDescr::Discrete { card: CardClass::Finite(*m) },
                    ],
                };
                expanded.compact_inner(beta, alpha)
            }
        }
    }

    fn union_compact(
        &self,
        parts: &[SpaceDescr],
        beta: &Ordinal,
        alpha: &Ordinal,
    ) -> Result<CompactnessVerdict> {
        use CompactnessVerdict::{No, Unknown, Yes};
        if parts.len() == 1 {
            return parts[0].compact_inner(beta, alpha);
        }
        if *beta == Ordinal::one() && parts.iter().all(SpaceDescr::has_full_open) {
            return Ok(No("union.empty-subcover"));
        }
        if let Some((lambda, n)) = all_iit_equal(parts) {
            // Partial covers of a single copy have order type λ or 1, so an
            // interval below λ·(j+1) admits subcovers of type λ·j + (n−j+1).
            for j in 1..n {
                let start = lambda.mul(&Ordinal::from_nat(j))?.add(&Ordinal::from_nat(n - j + 1))?;
                let end = lambda.mul(&Ordinal::from_nat(j + 1))?;
                if *beta >= start && *alpha < end {
                    return Ok(Yes("union.partial-cover-window"));
                }
            }
        }
        if let Some(lambda) = pair_ord_equal(parts) {
            let l2 = lambda.mul(&Ordinal::from_nat(2))?;
            let lw = lambda.add(&Ordinal::omega())?;
            let l2w = l2.add(&Ordinal::omega())?;
            if beta.is_finite() {
                return Ok(No("union.shifted-witness"));
            }
            if *alpha < lambda {
                return Ok(Yes("union.star-sum-bound"));
            }
            if *beta < lw {
                return Ok(No("union.shifted-witness"));
            }
            if *alpha < l2 {
                return Ok(Yes("union.partial-cover-window"));
            }
            if *beta < l2w {
                return Ok(No("union.shifted-witness"));
            }
            return Ok(Yes("union.star-sum-bound"));
        }
        // One bad summand suffices when each other summand can be covered
        // by a single open added to every member of the bad cover.
        for (i, part) in parts.iter().enumerate() {
            if parts.iter().enumerate().all(|(j, p)| j == i || p.has_full_open())
                && part.compact_inner(beta, alpha)?.is_no()
            {
                return Ok(No("union.summand-witness"));
            }
        }
        let fold = union_witness_fold(parts)?;
        if fold.iter().any(|g| g >= beta && g <= alpha) {
            return Ok(No("union.shifted-witness"));
        }
        if let Some((lo, hi)) = union_terminal_window(parts)? {
            if *alpha >= lo && *beta < hi {
                return Ok(No("union.terminal-window"));
            }
        }
        if let Some(floor) = union_floor(parts, alpha)? {
            if *beta >= floor {
                return Ok(Yes("union.star-sum-bound"));
            }
        }
        Ok(Unknown)
    }

    /// A solid interval `[lo, hi)` of ordinals with a negative verdict at
    /// every point, sitting at the top of the known negative range.
    fn terminal_no_window(&self) -> Result<Option<(Ordinal, Ordinal)>> {
        let kap = Ordinal::kappa();
        Ok(match self {
            SpaceDescr::Discrete { card: CardClass::Finite(0) } => None,
            SpaceDescr::Discrete { card: CardClass::Finite(n) } => {
                Some((Ordinal::one(), Ordinal::from_nat(n + 1)))
            }
            SpaceDescr::Discrete { card: CardClass::Aleph0 } => Some((Ordinal::one(), kap)),
            SpaceDescr::Discrete { card: CardClass::Kappa } => {
                Some((Ordinal::one(), Ordinal::kappa_plus()))
            }
            // Negative everywhere, but with no expressible right edge.
            SpaceDescr::Discrete { card: CardClass::KappaPlus } => None,
            SpaceDescr::Iit { card } => {
                let l = card_value(*card);
                let hi = l.succ()?;
                Some((l, hi))
            }
            SpaceDescr::Ord { card } => {
                let l = card_value(*card);
                let hi = l.add(&Ordinal::omega())?;
                Some((l, hi))
            }
            // The negative points (κ-multiples) do not form an interval.
            SpaceDescr::KappaKappa => None,
            SpaceDescr::SBeta { beta, .. } => Some((beta.clone(), beta.succ()?)),
            SpaceDescr::DisjointUnion { parts } => union_terminal_window(parts)?,
            SpaceDescr::FrechetDisjointUnion { .. } => None,
            SpaceDescr::WithFiniteDiscrete { base, m } => {
                if *m == 0 {
                    base.terminal_no_window()?
                } else {
                    let expanded = vec![
                        base.as_ref().clone(),
                        SpaceDescr::Discrete { card: CardClass::Finite(*m) },
                    ];
                    union_terminal_window(&expanded)?
                }
            }
        })
    }

    /// Ordinals `w` with a known negative verdict at `[w, w]`; used as
    /// shifted-sum seeds when the space joins a disjoint union.
    pub(crate) fn witnesses(&self) -> Result<Vec<Ordinal>> {
        let o = |s: &str| Ordinal::parse(s).expect("well-formed literal");
        let kap = Ordinal::kappa();
        Ok(match self {
            SpaceDescr::Discrete { card: CardClass::Finite(n) } => {
                let mut out: Vec<Ordinal> =
                    [1, 2, 3, *n].iter().filter(|v| **v >= 1 && **v <= *n).map(|v| Ordinal::from_nat(*v)).collect();
                out.dedup();
                out
            }
            SpaceDescr::Discrete { card: CardClass::Aleph0 } => {
                vec![o("1"), o("2"), o("w"), o("w+1"), o("w*2"), o("w^2")]
            }
            SpaceDescr::Discrete { card: CardClass::Kappa } => {
                vec![o("1"), o("2"), o("w"), o("k"), o("k+1"), o("k*2")]
            }
            SpaceDescr::Discrete { card: CardClass::KappaPlus } => {
                vec![o("1"), o("2"), o("w"), o("k"), o("k+"), o("k+ + 1")]
            }
            SpaceDescr::Iit { card } => vec![Ordinal::one(), card_value(*card)],
            SpaceDescr::Ord { card } => {
                let l = card_value(*card);
                let mut out = vec![o("1"), o("2"), o("3"), o("4")];
                for i in 0..4 {
                    out.push(l.add(&Ordinal::from_nat(i))?);
                }
                out
            }
            SpaceDescr::KappaKappa => vec![
                kap.clone(),
                kap.mul(&Ordinal::from_nat(2))?,
                kap.mul(&Ordinal::omega())?,
                kap.mul(&kap)?,
            ],
            SpaceDescr::SBeta { beta, .. } => vec![beta.clone()],
            SpaceDescr::DisjointUnion { parts } => {
                union_witness_fold(parts)?.into_iter().take(64).collect()
            }
            SpaceDescr::FrechetDisjointUnion { .. } => Vec::new(),
            SpaceDescr::WithFiniteDiscrete { base, m } => {
                if *m == 0 {
                    base.witnesses()?
                } else {
                    let expanded = vec![
                        base.as_ref().clone(),
                        SpaceDescr::Discrete { card: CardClass::Finite(*m) },
                    ];
                    union_witness_fold(&expanded)?.into_iter().take(64).collect()
                }
            }
        })
    }

    /// Least `β` with a known `Yes` verdict at `[β, α]`, if any.
    pub fn beta_floor(&self, alpha: &Ordinal) -> Result<Option<Ordinal>> {
        let kap = Ordinal::kappa();
        Ok(match self {
            SpaceDescr::Discrete { card } => match card {
                CardClass::Finite(n) => Some(Ordinal::from_nat(n + 1)),
                // Every representable uncountable ordinal is at least the
                // first symbolic tier.
                CardClass::Aleph0 => Some(kap),
                CardClass::Kappa => Some(Ordinal::kappa_plus()),
                CardClass::KappaPlus => None,
            },
            SpaceDescr::Iit { card } => {
                let lambda = card_value(*card);
                if *alpha < lambda {
                    Some(Ordinal::from_nat(2))
                } else {
                    Some(lambda.succ()?)
                }
            }
            SpaceDescr::Ord { card } => {
                let lambda = card_value(*card);
                if *alpha < lambda {
                    Some(Ordinal::omega())
                } else {
                    Some(lambda.add(&Ordinal::omega())?)
                }
            }
            SpaceDescr::KappaKappa => {
                if *alpha < kap {
                    Some(Ordinal::one())
                } else if alpha.card() == CardClass::Kappa {
                    let (q, _) = alpha.div_rem(&kap)?;
                    Some(kap.mul(&q)?.succ()?)
                } else {
                    Some(Ordinal::kappa_plus())
                }
            }
            SpaceDescr::SBeta { beta, alpha: a0, variant } => {
                if *variant != SBetaVariant::Plain || a0 != beta {
                    None
                } else {
                    match beta.card() {
                        CardClass::Finite(_) => Some(beta.succ()?),
                        CardClass::Aleph0 => Some(kap),
                        CardClass::Kappa => Some(Ordinal::kappa_plus()),
                        CardClass::KappaPlus => None,
                    }
                }
            }
            SpaceDescr::DisjointUnion { parts } => {
                if parts.len() == 1 {
                    return parts[0].beta_floor(alpha);
                }
                if let Some((lambda, n)) = all_iit_equal(parts) {
                    let top = lambda.mul(&Ordinal::from_nat(n))?;
                    if *alpha >= top {
                        return Ok(Some(top.succ()?));
                    }
                    if *alpha < lambda {
                        return Ok(Some(Ordinal::from_nat(n + 1)));
                    }
                    let (j, _) = alpha.div_rem(&lambda)?;
                    let j = j.as_nat().expect("block index below n is finite");
                    return Ok(Some(
                        lambda.mul(&Ordinal::from_nat(j))?.add(&Ordinal::from_nat(n - j + 1))?,
                    ));
                }
                if let Some(lambda) = pair_ord_equal(parts) {
                    let l2 = lambda.mul(&Ordinal::from_nat(2))?;
                    return Ok(Some(if *alpha >= l2 {
                        l2.add(&Ordinal::omega())?
                    } else if *alpha >= lambda {
                        lambda.add(&Ordinal::omega())?
                    } else {
                        Ordinal::omega()
                    }));
                }
                union_floor(parts, alpha)?
            }
            SpaceDescr::FrechetDisjointUnion { .. } => None,
            SpaceDescr::WithFiniteDiscrete { base, m } => {
                if *m == 0 {
                    return base.beta_floor(alpha);
                }
                let expanded = vec![
                    base.as_ref().clone(),
                    SpaceDescr::Discrete { card: CardClass::Finite(*m) },
                ];
                union_floor(&expanded, alpha)?
            }
        })
    }

    /// Least `L` such that the space is `[L, ∞)`-compact, when expressible.
    pub fn lindelof_ordinal(&self) -> Result<Option<Ordinal>> {
        self.validate()?;
        Ok(match self {
            SpaceDescr::Discrete { card } => match card {
                CardClass::Finite(n) => Some(Ordinal::from_nat(n + 1)),
                CardClass::Kappa => Some(Ordinal::kappa_plus()),
                // ω₁ and κ⁺⁺ lie outside the fragment.
                CardClass::Aleph0 | CardClass::KappaPlus => None,
            },
            SpaceDescr::Iit { card } => Some(card_value(*card).succ()?),
            SpaceDescr::Ord { card } => Some(card_value(*card).add(&Ordinal::omega())?),
            // Negative points of full cardinality are cofinal below the
            // second tier, and only κ distinct opens exist above it.
            SpaceDescr::KappaKappa => Some(Ordinal::kappa_plus()),
            SpaceDescr::SBeta { .. } | SpaceDescr::FrechetDisjointUnion { .. } => None,
            SpaceDescr::DisjointUnion { parts } => {
                let mut acc: Option<Ordinal> = None;
                for part in parts {
                    let l = match part.lindelof_ordinal()? {
                        Some(l) => l,
                        None => return Ok(None),
                    };
                    acc = Some(match acc {
                        None => l,
                        Some(a) => star_sum(&a, &l)?,
                    });
                }
                acc
            }
            SpaceDescr::WithFiniteDiscrete { base, m } => {
                let l = match base.lindelof_ordinal()? {
                    Some(l) => l,
                    None => return Ok(None),
                };
                if *m == 0 {
                    Some(l)
                } else {
                    Some(star_sum(&l, &Ordinal::from_nat(m + 1))?)
                }
            }
        })
    }
}

/// All summands the same initial-interval space, at least two of them.
fn all_iit_equal(parts: &[SpaceDescr]) -> Option<(Ordinal, u64)> {
    if parts.len() < 2 {
        return None;
    }
    let card = match &parts[0] {
        SpaceDescr::Iit { card } => *card,
        _ => return None,
    };
    if parts.iter().all(|p| matches!(p, SpaceDescr::Iit { card: c } if *c == card)) {
        Some((card_value(card), parts.len() as u64))
    } else {
        None
    }
}

/// Exactly two summands with the same order topology.
fn pair_ord_equal(parts: &[SpaceDescr]) -> Option<Ordinal> {
    match parts {
        [SpaceDescr::Ord { card: a }, SpaceDescr::Ord { card: b }] if a == b => {
            Some(card_value(*a))
        }
        _ => None,
    }
}

/// Shifted-sum fold of per-summand incompactness witnesses.  A summand may
/// be skipped when its full point set is open (the cover of the skipped
/// part is then a single set added to every member).
fn union_witness_fold(parts: &[SpaceDescr]) -> Result<BTreeSet<Ordinal>> {
    let mut acc: BTreeSet<Ordinal> = BTreeSet::new();
    acc.insert(Ordinal::zero());
    for part in parts {
        let ws = part.witnesses()?;
        let skippable = part.has_full_open();
        let mut next = BTreeSet::new();
        for x in &acc {
            if skippable {
                next.insert(x.clone());
            }
            for w in &ws {
                if x.is_zero() {
                    next.insert(w.clone());
                } else if let Ok(sums) = shifted_sums(x, w) {
                    next.extend(sums);
                }
            }
        }
        // Keep the fold small; dropping values only loses negative rules.
        acc = next.into_iter().take(FOLD_CAP).collect();
    }
    acc.remove(&Ordinal::zero());
    Ok(acc)
}

/// Top slice of the sums of two negative windows.  Fixing the largest
/// point `a` of one window, every `γ ∈ [a + lo, a + hi)` of the other
/// splits as `γ = a + b` with `b` in that window, and a shifted sum of two
/// negative points is negative for the union.  Needs one window whose
/// right edge is a successor (so a largest point exists).
fn combine_windows(
    w1: &(Ordinal, Ordinal),
    w2: &(Ordinal, Ordinal),
) -> Result<Option<(Ordinal, Ordinal)>> {
    let top = |hi: &Ordinal| -> Result<Option<Ordinal>> {
        Ok(if hi.is_successor() { Some(hi.pred()?) } else { None })
    };
    if let Some(a) = top(&w1.1)? {
        return Ok(Some((a.add(&w2.0)?, a.add(&w2.1)?)));
    }
    if let Some(a) = top(&w2.1)? {
        return Ok(Some((a.add(&w1.0)?, a.add(&w1.1)?)));
    }
    Ok(None)
}

/// Fold of the summand windows; summands with no window may be skipped
/// when their full point set is open.
fn union_terminal_window(parts: &[SpaceDescr]) -> Result<Option<(Ordinal, Ordinal)>> {
    let mut acc: Option<(Ordinal, Ordinal)> = None;
    for part in parts {
        match part.terminal_no_window()? {
            Some(w) => {
                acc = match acc {
                    None => Some(w),
                    Some(a) => match combine_windows(&a, &w)? {
                        Some(c) => Some(c),
                        None => return Ok(None),
                    },
                };
            }
            None => {
                if !part.has_full_open() {
                    return Ok(None);
                }
            }
        }
    }
    Ok(acc)
}

/// Star-sum fold of per-summand floors; `None` when any floor is unknown.
fn union_floor(parts: &[SpaceDescr], alpha: &Ordinal) -> Result<Option<Ordinal>> {
    let mut acc: Option<Ordinal> = None;
    for part in parts {
        let f = match part.beta_floor(alpha)? {
            Some(f) => f,
            None => return Ok(None),
        };
        acc = Some(match acc {
            None => f,
            Some(a) => star_sum(&a, &f)?,
        });
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Admissible Lindelöf values
// ---------------------------------------------------------------------------

/// Structural constraint a space class imposes on its Lindelöf ordinals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LindelofConstraint {
    /// The space satisfies the point-removal separation axiom.
    T1,
    /// The point set has at most the given cardinality (meaningful for
    /// `Aleph0` and `Kappa`; other classes impose no encoded restriction).
    CardBound(CardClass),
}

/// Whether `b` can be the Lindelöf ordinal of a space under `constraint`.
///
/// For `T1`, accepts exactly: finite values; `ω`; ordinals of uncountable
/// cofinality; `γ + ω` with `cf(γ)` uncountable; and cofinality-`ω` limits
/// of ordinals of uncountable cofinality.  For `CardBound(ℵ₀)`, accepts
/// values `≤ ω·ω` (the only other possibility lies outside the fragment).
/// For `CardBound(κ)`, rejects `α₁ + κ^ε + γ` with `0 < γ < κ·ω` and
/// `ε > 1` a successor.
pub fn admissible_lindelof(b: &Ordinal, constraint: LindelofConstraint) -> bool {
    match constraint {
        LindelofConstraint::T1 => t1_admissible(b),
        LindelofConstraint::CardBound(CardClass::Aleph0) => {
            let w = Ordinal::omega();
            *b <= w.mul(&w).expect("ω·ω is representable")
        }
        LindelofConstraint::CardBound(CardClass::Kappa) => !kappa_excluded(b),
        LindelofConstraint::CardBound(_) => true,
    }
}

fn t1_admissible(b: &Ordinal) -> bool {
    if b.is_finite() || *b == Ordinal::omega() {
        return true;
    }
    let kap = Ordinal::kappa();
    let cf = b.cofinality();
    if cf >= kap {
        return true;
    }
    // γ + ω with cf(γ) uncountable: the last CNF term must be ω itself.
    let terms = b.terms();
    if let Some((e, c)) = terms.last() {
        if e.to_ordinal() == Ordinal::one() && *c == 1 {
            let prefix = Ordinal::from_terms_unchecked(terms[..terms.len() - 1].to_vec());
            if !prefix.is_zero() && prefix.cofinality() >= kap {
                return true;
            }
        }
    }
    // Limits of uncountable-cofinality ordinals: no countable-sized tail
    // terms at all (the multiples of the first tier are then cofinal).
    cf == Ordinal::omega() && b.star() == *b
}

/// The excluded tail shape for point sets of the first symbolic tier:
/// `α₁ + κ^ε + γ` with `0 < γ < κ·ω` and `ε > 1` a successor.
fn kappa_excluded(b: &Ordinal) -> bool {
    let kap = Ordinal::kappa();
    let terms = b.terms();
    let split = terms.partition_point(|(e, _)| e.to_ordinal() > kap);
    if split == terms.len() || split == 0 {
        // No tail below κ·ω, or no prefix to carry the power term.
        return false;
    }
    let (e_last, _) = &terms[split - 1];
    if e_last.kp() != 0 || !e_last.tail().is_zero() {
        return false;
    }
    let eps = e_last.ke();
    *eps > Ordinal::one() && eps.is_successor()
}

// ---------------------------------------------------------------------------
// Stock descriptors
// ---------------------------------------------------------------------------

/// A representative selection of descriptors, used for witness searches
/// and consistency suites.
pub fn catalog_spaces() -> Vec<SpaceDescr> {
    use CardClass::{Aleph0, Finite, Kappa, KappaPlus};
    let o = |s: &str| Ordinal::parse(s).expect("well-formed literal");
    let iit_k = SpaceDescr::Iit { card: Kappa };
    let ord_k = SpaceDescr::Ord { card: Kappa };
    let mut out = vec![
        SpaceDescr::Discrete { card: Finite(1) },
        SpaceDescr::Discrete { card: Finite(4) },
        SpaceDescr::Discrete { card: Aleph0 },
        SpaceDescr::Discrete { card: Kappa },
        SpaceDescr::Discrete { card: KappaPlus },
        SpaceDescr::Iit { card: Aleph0 },
        iit_k.clone(),
        SpaceDescr::Iit { card: KappaPlus },
        ord_k.clone(),
        SpaceDescr::Ord { card: KappaPlus },
        SpaceDescr::KappaKappa,
        SpaceDescr::copies(iit_k.clone(), 2),
        SpaceDescr::copies(iit_k.clone(), 3),
        SpaceDescr::copies(SpaceDescr::Iit { card: Aleph0 }, 2),
        SpaceDescr::copies(ord_k.clone(), 2),
        SpaceDescr::DisjointUnion { parts: vec![iit_k.clone(), ord_k.clone()] },
        SpaceDescr::DisjointUnion {
            parts: vec![SpaceDescr::Discrete { card: Kappa }, iit_k.clone()],
        },
        SpaceDescr::FrechetDisjointUnion { parts: vec![ord_k.clone(), ord_k.clone()] },
        SpaceDescr::KappaKappa,
    ];
    for m in 1..=3 {
        out.push(SpaceDescr::WithFiniteDiscrete { base: Box::new(iit_k.clone()), m });
    }
    out.push(SpaceDescr::WithFiniteDiscrete { base: Box::new(ord_k), m: 2 });
    for b in ["w", "k", "k*w", "k*k"] {
        out.push(SpaceDescr::SBeta {
            beta: o(b),
            alpha: o(b),
            variant: SBetaVariant::Plain,
        });
    }
    for v in [SBetaVariant::Unions, SBetaVariant::Topology, SBetaVariant::Tychonoff] {
        out.push(SpaceDescr::SBeta { beta: o("w"), alpha: o("w"), variant: v });
    }
    out
}
