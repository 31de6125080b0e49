//! Three-valued engine for compactness-implication queries.
//!
//! A query fixes a class of spaces and two ordinal intervals and asks: is
//! every space in the class that is compact on the source interval also
//! compact on the destination interval?  [`implies_compactness`] answers
//! `Implied` by closing the source interval under sound extension rules and
//! checking that the closure covers the destination, `NotImplied` by
//! exhibiting a catalog space whose own verdicts separate the two intervals,
//! and `Unknown` when neither side fires.  Every verdict carries the ordered
//! list of rule ids that produced it.
//!
//! Closure segments may reach past the two-tier fragment: a segment can
//! record that coverage continues through every ordinal countably beyond a
//! fragment point, or through everything below the successor of the second
//! tier.  All reach comparisons translate those extended bounds into exact
//! fragment tests, so verdicts hold for the ordinals the symbols denote and
//! not merely for the representable ones.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::catalog::{catalog_spaces, SBetaVariant, SpaceDescr};
use crate::ordinal::{CardClass, Exponent, Ordinal};
use crate::{Error, Result};

const R_HYPOTHESIS: &str = "hypothesis";
const R_COFINAL: &str = "extend.cofinal-steps";
const R_CEILING: &str = "extend.cardinal-ceiling";
const R_LIMIT_STEP: &str = "extend.limit-cardinal-step";
const R_REPEAT: &str = "extend.repeat-summand";
const R_T1: &str = "t1.limit-collapse";
const R_LAMBDA: &str = "t1.lambda-tail";
const R_SHIFT: &str = "union.suffix-shift";
const R_FACTOR: &str = "union.left-factor";
const R_COF_JUMP: &str = "union.cofinality-jump";
const R_CARD_W: &str = "card.countable-collapse";
const R_CARD_K: &str = "card.kappa-collapse";

/// Upper bound on stored closure segments.
const SEGMENT_CAP: usize = 256;
/// Recursion depth for backward point demands.
const DEMAND_DEPTH: usize = 3;
/// Iterations of the repeated-summand emission loop.
const REPEAT_STEPS: usize = 48;

// ---------------------------------------------------------------------------
// Query types
// ---------------------------------------------------------------------------

/// Class of spaces an implication quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceClass {
    /// No structural assumption.
    Arbitrary,
    /// Open families closed under arbitrary unions.
    UnionClosed,
    /// Every singleton is an intersection of opens.
    T1,
    /// Every singleton is an intersection of at most λ opens.
    LambdaT1(CardClass),
    /// Point sets of at most the given cardinality.
    CardBound(CardClass),
    /// Both the cardinality bound and closure under unions.
    CardBoundUnionClosed(CardClass),
}

impl SpaceClass {
    /// All classes the engine accepts, in display order.
    pub fn all() -> Vec<SpaceClass> {
        use CardClass::{Aleph0, Kappa, KappaPlus};
        vec![
            SpaceClass::Arbitrary,
            SpaceClass::UnionClosed,
            SpaceClass::T1,
            SpaceClass::LambdaT1(Aleph0),
            SpaceClass::LambdaT1(Kappa),
            SpaceClass::LambdaT1(KappaPlus),
            SpaceClass::CardBound(Aleph0),
            SpaceClass::CardBound(Kappa),
            SpaceClass::CardBoundUnionClosed(Aleph0),
            SpaceClass::CardBoundUnionClosed(Kappa),
        ]
    }

    /// Rejects parameters outside the supported symbolic range.
    pub fn validate(&self) -> Result<()> {
        match self {
            SpaceClass::LambdaT1(l) if !l.is_infinite() => Err(Error::Invalid(format!(
                "point-separation degree must be an infinite cardinal, got {l}"
            ))),
            SpaceClass::CardBound(c) | SpaceClass::CardBoundUnionClosed(c)
                if !matches!(c, CardClass::Aleph0 | CardClass::Kappa) =>
            {
                Err(Error::Invalid(format!("cardinality bound must be w or k, got {c}")))
            }
            _ => Ok(()),
        }
    }

    /// Whether a catalog space belongs to the class.
    pub fn admits(&self, space: &SpaceDescr) -> bool {
        match self {
            SpaceClass::Arbitrary => true,
            SpaceClass::UnionClosed => space.profile().union_closed,
            SpaceClass::T1 => space.profile().t1,
            SpaceClass::LambdaT1(l) => space.is_lambda_t1(*l),
            SpaceClass::CardBound(c) => space.space_card().is_some_and(|sc| sc <= *c),
            SpaceClass::CardBoundUnionClosed(c) => {
                space.space_card().is_some_and(|sc| sc <= *c) && space.profile().union_closed
            }
        }
    }

    fn union_rules(self) -> bool {
        matches!(self, SpaceClass::UnionClosed | SpaceClass::CardBoundUnionClosed(_))
    }

    fn t1_rules(self) -> bool {
        matches!(self, SpaceClass::T1 | SpaceClass::LambdaT1(_))
    }

    fn lambda(self) -> Option<CardClass> {
        match self {
            SpaceClass::LambdaT1(l) => Some(l),
            _ => None,
        }
    }

    fn card_bound(self) -> Option<(CardClass, bool)> {
        match self {
            SpaceClass::CardBound(c) => Some((c, false)),
            SpaceClass::CardBoundUnionClosed(c) => Some((c, true)),
            _ => None,
        }
    }
}

fn card_tag(c: CardClass) -> String {
    match c {
        CardClass::Finite(n) => n.to_string(),
        CardClass::Aleph0 => "w".into(),
        CardClass::Kappa => "k".into(),
        CardClass::KappaPlus => "kp".into(),
    }
}

impl fmt::Display for SpaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceClass::Arbitrary => f.write_str("arbitrary"),
            SpaceClass::UnionClosed => f.write_str("union-closed"),
            SpaceClass::T1 => f.write_str("t1"),
            SpaceClass::LambdaT1(l) => write!(f, "lambda-t1-{}", card_tag(*l)),
            SpaceClass::CardBound(c) => write!(f, "card-{}", card_tag(*c)),
            SpaceClass::CardBoundUnionClosed(c) => write!(f, "card-union-{}", card_tag(*c)),
        }
    }
}

impl FromStr for SpaceClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use CardClass::{Aleph0, Kappa, KappaPlus};
        Ok(match s.trim() {
            "arbitrary" => SpaceClass::Arbitrary,
            "union-closed" => SpaceClass::UnionClosed,
            "t1" => SpaceClass::T1,
            "lambda-t1-w" => SpaceClass::LambdaT1(Aleph0),
            "lambda-t1-k" => SpaceClass::LambdaT1(Kappa),
            "lambda-t1-kp" => SpaceClass::LambdaT1(KappaPlus),
            "card-w" => SpaceClass::CardBound(Aleph0),
            "card-k" => SpaceClass::CardBound(Kappa),
            "card-union-w" => SpaceClass::CardBoundUnionClosed(Aleph0),
            "card-union-k" => SpaceClass::CardBoundUnionClosed(Kappa),
            other => return Err(Error::Invalid(format!("unknown space class `{other}`"))),
        })
    }
}

impl Serialize for SpaceClass {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SpaceClass {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(de)?;
        text.parse().map_err(D::Error::custom)
    }
}

/// Closed `[lo, hi]` or half-open `[lo, hi)` interval of compactness points.
///
/// The lower end is always at least 1.  A half-open interval with a
/// successor upper end normalizes to its closed form, so an open upper end
/// is always a limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdinalInterval {
    lo: Ordinal,
    hi: Ordinal,
    open: bool,
}

impl OrdinalInterval {
    /// Closed interval `[lo, hi]`.
    pub fn closed(lo: Ordinal, hi: Ordinal) -> Result<Self> {
        if lo.is_zero() || lo > hi {
            return Err(Error::MalformedInterval { lo: lo.to_string(), hi: hi.to_string() });
        }
        Ok(OrdinalInterval { lo, hi, open: false })
    }

    /// Half-open interval `[lo, hi)`.
    pub fn half_open(lo: Ordinal, hi: Ordinal) -> Result<Self> {
        if lo.is_zero() || lo >= hi {
            return Err(Error::MalformedInterval { lo: lo.to_string(), hi: hi.to_string() });
        }
        if hi.is_successor() {
            Self::closed(lo, hi.pred()?)
        } else {
            Ok(OrdinalInterval { lo, hi, open: true })
        }
    }

    /// Single point `[p, p]`.
    pub fn point(p: Ordinal) -> Result<Self> {
        Self::closed(p.clone(), p)
    }

    pub fn lo(&self) -> &Ordinal {
        &self.lo
    }

    pub fn hi(&self) -> &Ordinal {
        &self.hi
    }

    /// Whether the upper end is excluded.
    pub fn is_open(&self) -> bool {
        self.open
    }

    pub fn is_point(&self) -> bool {
        !self.open && self.lo == self.hi
    }
}

impl fmt::Display for OrdinalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}{}", self.lo, self.hi, if self.open { ')' } else { ']' })
    }
}

impl FromStr for OrdinalInterval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let open = t.ends_with(')');
        if !t.starts_with('[') || !(open || t.ends_with(']')) {
            return Err(Error::Invalid(format!("expected `[lo, hi]` or `[lo, hi)`, got `{s}`")));
        }
        let inner = &t[1..t.len() - 1];
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::Invalid(format!("missing `,` in interval `{s}`")))?;
        let lo = Ordinal::parse(a.trim())?;
        let hi = Ordinal::parse(b.trim())?;
        if open {
            Self::half_open(lo, hi)
        } else {
            Self::closed(lo, hi)
        }
    }
}

impl Serialize for OrdinalInterval {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for OrdinalInterval {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(de)?;
        text.parse().map_err(D::Error::custom)
    }
}

/// "Does compactness on `src` imply compactness on `dst` for every space in
/// `class`?"
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImplicationQuery {
    pub src: OrdinalInterval,
    pub dst: OrdinalInterval,
    pub class: SpaceClass,
}

impl ImplicationQuery {
    pub fn new(src: OrdinalInterval, dst: OrdinalInterval, class: SpaceClass) -> Self {
        ImplicationQuery { src, dst, class }
    }
}

/// Answer to an implication query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Holds for every space in the class; `rules` lists the applied rule
    /// ids in order of first use.
    Implied { rules: Vec<&'static str> },
    /// Fails on the carried witness space; `rules` cites the catalog rules
    /// showing the witness is compact on the source but not the destination.
    NotImplied { witness: SpaceDescr, rules: Vec<&'static str> },
    /// No rule on either side fires.
    Unknown,
}

impl Verdict {
    pub fn is_implied(&self) -> bool {
        matches!(self, Verdict::Implied { .. })
    }

    pub fn is_not_implied(&self) -> bool {
        matches!(self, Verdict::NotImplied { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown)
    }

    pub fn rules(&self) -> &[&'static str] {
        match self {
            Verdict::Implied { rules } | Verdict::NotImplied { rules, .. } => rules,
            Verdict::Unknown => &[],
        }
    }

    pub fn witness(&self) -> Option<&SpaceDescr> {
        match self {
            Verdict::NotImplied { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Verdict::Implied { rules } => {
                let mut st = ser.serialize_struct("Verdict", 2)?;
                st.serialize_field("verdict", "implied")?;
                st.serialize_field("rules", rules)?;
                st.end()
            }
            Verdict::NotImplied { witness, rules } => {
                let mut st = ser.serialize_struct("Verdict", 3)?;
                st.serialize_field("verdict", "not_implied")?;
                st.serialize_field("rules", rules)?;
                st.serialize_field("witness", witness)?;
                st.end()
            }
            Verdict::Unknown => {
                let mut st = ser.serialize_struct("Verdict", 2)?;
                st.serialize_field("verdict", "unknown")?;
                st.serialize_field("rules", &[] as &[&str])?;
                st.end()
            }
        }
    }
}

/// Answers an implication query with a rule trace.
pub fn implies_compactness(query: &ImplicationQuery) -> Result<Verdict> {
    query.class.validate()?;
    if let Some(rules) = positive_closure(query)? {
        return Ok(Verdict::Implied { rules });
    }
    if let Some((witness, rules)) = find_witness(query)? {
        return Ok(Verdict::NotImplied { witness, rules });
    }
    Ok(Verdict::Unknown)
}

// ---------------------------------------------------------------------------
// Positive side: interval closure
// ---------------------------------------------------------------------------

/// Upper reach of a closure segment.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Reach {
    /// Through `x` inclusive.
    To(Ordinal),
    /// Through everything strictly below `x`.
    Before(Ordinal),
    /// Through everything countably beyond `a`: all points below `a + ω₁`.
    CountablyBeyond(Ordinal),
    /// Through every expressible ordinal.
    Everything,
}

/// `[lo, reach]` is implied compact, by the listed rule chain.
#[derive(Debug, Clone)]
struct Segment {
    lo: Ordinal,
    reach: Reach,
    rules: Vec<&'static str>,
}

/// First expressible value at or past `a + ω₁`.
///
/// The gap `[a, a + κ)` holds exactly the values `a + p` with `p` pure, and
/// pure values are countable, so an expressible value is below `a + ω₁` if
/// and only if it is below `a + κ`.
fn beyond_bound(a: &Ordinal) -> Result<Ordinal> {
    a.add(&Ordinal::kappa())
}

fn normalized(lo: Ordinal, reach: Reach) -> Result<Option<(Ordinal, Reach)>> {
    let reach = match reach {
        Reach::Before(x) if x.is_successor() => Reach::To(x.pred()?),
        r => r,
    };
    let keep = match &reach {
        Reach::To(x) => lo <= *x,
        Reach::Before(x) => lo < *x,
        Reach::CountablyBeyond(a) => lo < beyond_bound(a)?,
        Reach::Everything => true,
    };
    Ok(keep.then_some((lo, reach)))
}

fn admits(seg: &Segment, p: &Ordinal) -> Result<bool> {
    if *p < seg.lo {
        return Ok(false);
    }
    Ok(match &seg.reach {
        Reach::To(x) => p <= x,
        Reach::Before(x) => p < x,
        Reach::CountablyBeyond(a) => *p < beyond_bound(a)?,
        Reach::Everything => true,
    })
}

struct Closure {
    segs: Vec<Segment>,
}

impl Closure {
    fn push(
        &mut self,
        lo: Ordinal,
        reach: Reach,
        parent: &[&'static str],
        rule: &'static str,
    ) -> Result<bool> {
        if self.segs.len() >= SEGMENT_CAP {
            return Ok(false);
        }
        let Some((lo, reach)) = normalized(lo, reach)? else {
            return Ok(false);
        };
        if self.segs.iter().any(|s| s.lo == lo && s.reach == reach) {
            return Ok(false);
        }
        let mut rules = parent.to_vec();
        if !rules.contains(&rule) {
            rules.push(rule);
        }
        self.segs.push(Segment { lo, reach, rules });
        Ok(true)
    }
}

/// Points of a segment that are certainly covered and structurally known.
fn endpoint_points(seg: &Segment) -> Vec<Ordinal> {
    let mut pts = vec![seg.lo.clone()];
    if let Reach::To(x) = &seg.reach {
        if *x != seg.lo {
            pts.push(x.clone());
        }
    }
    pts
}

/// Decompositions `p = g + a` with both parts nonzero: term boundaries and
/// splits of a single coefficient.
fn splits_of(p: &Ordinal) -> Result<Vec<(Ordinal, Ordinal)>> {
    let ts = p.terms();
    let mut out = Vec::new();
    for i in 1..ts.len() {
        out.push((
            Ordinal::from_terms(ts[..i].to_vec())?,
            Ordinal::from_terms(ts[i..].to_vec())?,
        ));
    }
    for i in 0..ts.len() {
        let (e, c) = &ts[i];
        if *c >= 2 {
            let mut left = ts[..i].to_vec();
            left.push((e.clone(), c - 1));
            let mut right = vec![(e.clone(), 1)];
            right.extend_from_slice(&ts[i + 1..]);
            out.push((Ordinal::from_terms(left)?, Ordinal::from_terms(right)?));
        }
    }
    Ok(out)
}

/// From `[lo, x]` with `x` infinite, reach below `x + cf(x)·ω`.
fn extend_cofinal_steps(cl: &mut Closure, seg: &Segment) -> Result<bool> {
    let Reach::To(x) = &seg.reach else {
        return Ok(false);
    };
    if x.is_finite() {
        return Ok(false);
    }
    let cf = x.cofinality();
    let out = if cf == Ordinal::kappa_plus() {
        // κ⁺·ω has no fragment form; a finite stack under-approximates it.
        Reach::To(x.add(&Ordinal::kappa_plus().mul(&Ordinal::from_nat(8))?)?)
    } else {
        Reach::Before(x.add(&cf.mul(&Ordinal::omega())?)?)
    };
    cl.push(seg.lo.clone(), out, &seg.rules, R_COFINAL)
}

/// A covered cardinal extends coverage below its successor.
fn extend_cardinal_ceiling(cl: &mut Closure, seg: &Segment) -> Result<bool> {
    let mut changed = false;
    let table = [
        (Ordinal::omega(), Reach::CountablyBeyond(Ordinal::zero())),
        (Ordinal::kappa(), Reach::Before(Ordinal::kappa_plus())),
        (Ordinal::kappa_plus(), Reach::Everything),
    ];
    for (c, out) in table {
        if admits(seg, &c)? {
            changed |= cl.push(seg.lo.clone(), out, &seg.rules, R_CEILING)?;
        }
    }
    Ok(changed)
}

/// `cf a > ω`, or `a` is a limit of points of uncountable cofinality
/// (fragment form: a κ-multiple with a limit quotient).
fn sits_above_omega(a: &Ordinal) -> Result<bool> {
    if a.is_zero() {
        return Ok(false);
    }
    let cf = a.cofinality();
    if cf == Ordinal::kappa() || cf == Ordinal::kappa_plus() {
        return Ok(true);
    }
    if a.is_multiple_of_kappa() {
        let (quot, _) = a.div_rem(&Ordinal::kappa())?;
        return Ok(quot.is_limit());
    }
    Ok(false)
}

/// A covered point `a + λ` whose base outruns λ extends coverage below
/// `a + λ⁺`.
fn extend_limit_cardinal_step(cl: &mut Closure, seg: &Segment) -> Result<bool> {
    let (x, inclusive) = match &seg.reach {
        Reach::To(x) => (x, true),
        Reach::Before(x) => (x, false),
        _ => return Ok(false),
    };
    let in_range =
        |p: &Ordinal| *p >= seg.lo && if inclusive { p <= x } else { p < x };
    let mut changed = false;
    let ts = x.terms();
    // λ = ω: bases from the prefixes of the reach, plus one ω stripped off
    // a final ω-term.
    let omega = Ordinal::omega();
    let mut cands: Vec<Ordinal> = Vec::new();
    for i in 0..=ts.len() {
        cands.push(Ordinal::from_terms(ts[..i].to_vec())?);
    }
    if let Some((e, c)) = ts.last() {
        if e.kp() == 0 && e.ke().is_zero() && *e.tail() == Ordinal::one() && *c >= 2 {
            let mut t2 = ts.to_vec();
            t2.last_mut().expect("nonempty by construction").1 = c - 1;
            cands.push(Ordinal::from_terms(t2)?);
        }
    }
    for a in &cands {
        if sits_above_omega(a)? && in_range(&a.add(&omega)?) {
            changed |= cl.push(
                seg.lo.clone(),
                Reach::CountablyBeyond(a.clone()),
                &seg.rules,
                R_LIMIT_STEP,
            )?;
        }
    }
    // λ = κ: the base must sit on the second tier, where cofinality
    // exceeds κ.
    if let Some((e0, c0)) = ts.first() {
        if e0.kp() == 1 {
            let a = Ordinal::single(e0.clone(), *c0);
            if in_range(&a.add(&Ordinal::kappa())?) {
                let hi = a.add(&Ordinal::kappa_plus())?;
                changed |= cl.push(seg.lo.clone(), Reach::Before(hi), &seg.rules, R_LIMIT_STEP)?;
            }
        }
    }
    Ok(changed)
}

/// A covered point `g + a` puts every `g + a·n` in reach.
fn extend_repeat_summand(cl: &mut Closure, seg: &Segment, dst: &OrdinalInterval) -> Result<bool> {
    let within = |q: &Ordinal| if dst.open { *q < dst.hi } else { *q <= dst.hi };
    let mut changed = false;
    for p in endpoint_points(seg) {
        let mut decomps = splits_of(&p)?;
        if !p.is_finite() {
            // 1 + p = p, so the whole point repeats as p·n.
            decomps.push((Ordinal::one(), p.clone()));
        }
        for (g, a) in decomps {
            if g.is_finite() && a.is_finite() {
                continue;
            }
            let mut an = a.clone();
            for _ in 0..REPEAT_STEPS {
                an = an.add(&a)?;
                let q = g.add(&an)?;
                if !within(&q) {
                    break;
                }
                changed |= cl.push(q.clone(), Reach::To(q), &seg.rules, R_REPEAT)?;
            }
        }
    }
    Ok(changed)
}

/// In point-separated spaces an infinite lower end collapses to its
/// limit-stripped form, and a closed reach stretches countably beyond.
fn t1_limit_collapse(cl: &mut Closure, seg: &Segment) -> Result<bool> {
    if seg.lo.is_finite() {
        return Ok(false);
    }
    let lo2 = seg.lo.star_star()?;
    let reach2 = match &seg.reach {
        Reach::To(x) => Reach::CountablyBeyond(x.clone()),
        r => r.clone(),
    };
    cl.push(lo2, reach2, &seg.rules, R_T1)
}

/// Limit values obtained by truncating `p` at a term boundary, including
/// the variant that keeps a single copy of the last retained term.
fn limit_prefixes(p: &Ordinal) -> Vec<Ordinal> {
    let ts = p.terms();
    let mut out: Vec<Ordinal> = Vec::new();
    for i in 1..=ts.len() {
        let full = Ordinal::from_terms(ts[..i].to_vec()).ok();
        let mut head = ts[..i].to_vec();
        head[i - 1].1 = 1;
        let single = Ordinal::from_terms(head).ok();
        for b in [full, single].into_iter().flatten() {
            if b.is_limit() && !out.contains(&b) {
                out.push(b);
            }
        }
    }
    out
}

/// Compactness at one point spreads along a λ-sized tail: when a covered
/// point decomposes as `b + a` with `b` a limit of cofinality at most λ and
/// `a` of size at most λ, the whole window `[b, b + λ⁺)` is reached.
///
/// Both size conditions matter.  The countable discrete space keeps opens
/// open under arbitrary punctures yet is compact only on windows of
/// uncountable end, so an unrestricted collapse would jump a cardinal gap;
/// and a base of cofinality above λ admits a diagonal cover that no
/// accumulation argument on λ-sized puncture sets defeats.
fn t1_lambda_tail(cl: &mut Closure, seg: &Segment, lam: CardClass) -> Result<bool> {
    let mut changed = false;
    for p in endpoint_points(seg) {
        for b in limit_prefixes(&p) {
            if b.cofinality().card() > lam {
                continue;
            }
            let a = b.left_sub(&p)?;
            if a.card() > lam {
                continue;
            }
            let reach = match lam {
                CardClass::Aleph0 => Reach::CountablyBeyond(b.clone()),
                CardClass::Kappa => Reach::Before(b.add(&Ordinal::kappa_plus())?),
                _ => Reach::Everything,
            };
            changed |= cl.push(b.clone(), reach, &seg.rules, R_LAMBDA)?;
        }
    }
    Ok(changed)
}

/// Union-closed covers split at a left summand: shift a whole segment.
fn union_suffix_shift(cl: &mut Closure, seg: &Segment, g: &Ordinal) -> Result<bool> {
    let lo = g.add(&seg.lo)?;
    let reach = match &seg.reach {
        Reach::To(x) => Reach::To(g.add(x)?),
        Reach::Before(x) => Reach::Before(g.add(x)?),
        Reach::CountablyBeyond(a) => Reach::CountablyBeyond(g.add(a)?),
        Reach::Everything => Reach::Everything,
    };
    cl.push(lo, reach, &seg.rules, R_SHIFT)
}

/// Left parts of the destination ends, used as shift offsets.
fn summand_prefixes(dst: &OrdinalInterval) -> Result<Vec<Ordinal>> {
    let mut out: Vec<Ordinal> = Vec::new();
    for y in [&dst.lo, &dst.hi] {
        for (g, _) in splits_of(y)? {
            if !out.contains(&g) {
                out.push(g);
            }
        }
    }
    out.truncate(12);
    Ok(out)
}

/// Anchor `A` of a value whose final κ-power block admits the collapse
/// window `[A, A + κ·ω)`: the last term must be `κ^ε` with `ε ≥ 2` a
/// successor, and everything after it must stay below `κ·ω`.
fn kappa_block_prefix(y: &Ordinal) -> Option<Ordinal> {
    let ts = y.terms();
    let two = Ordinal::from_nat(2);
    let idx = ts.iter().rposition(|(e, _)| {
        e.kp() == 0 && e.tail().is_zero() && *e.ke() >= two && e.ke().is_successor()
    })?;
    if let Some((e, _)) = ts.get(idx + 1) {
        let small = e.kp() == 0
            && (e.ke().is_zero() || (*e.ke() == Ordinal::one() && e.tail().is_zero()));
        if !small {
            return None;
        }
    }
    Ordinal::from_terms(ts[..=idx].to_vec()).ok()
}

/// Cardinality-bounded collapses: a trigger point anywhere in the segment
/// spreads compactness across the whole tail of the bound's range.
fn card_collapse(
    cl: &mut Closure,
    seg: &Segment,
    bound: CardClass,
    union_closed: bool,
    dst: &OrdinalInterval,
) -> Result<bool> {
    match bound {
        CardClass::Aleph0 => {
            if !seg.lo.is_pure() {
                return Ok(false);
            }
            let fired = if union_closed {
                // Any nonzero covered point triggers.
                true
            } else {
                let omega = Ordinal::omega();
                let p0 = if seg.lo <= omega {
                    omega
                } else if seg.lo.is_limit() {
                    seg.lo.clone()
                } else {
                    seg.lo.limit_part().add(&omega)?
                };
                admits(seg, &p0)?
            };
            if !fired {
                return Ok(false);
            }
            let w2 = Ordinal::omega().mul(&Ordinal::omega())?;
            cl.push(w2, Reach::Everything, &seg.rules, R_CARD_W)
        }
        CardClass::Kappa => {
            let kap = Ordinal::kappa();
            let fired = if union_closed {
                seg.lo.card() <= CardClass::Kappa
            } else if seg.lo.card() == CardClass::KappaPlus {
                false
            } else {
                let p0 = if seg.lo <= kap {
                    kap.clone()
                } else {
                    let (quot, rem) = seg.lo.div_rem(&kap)?;
                    if rem.is_zero() {
                        seg.lo.clone()
                    } else {
                        kap.mul(&quot.succ()?)?
                    }
                };
                p0.card() == CardClass::Kappa && admits(seg, &p0)?
            };
            if !fired {
                return Ok(false);
            }
            let mut changed = false;
            let kw = kap.mul(&Ordinal::omega())?;
            let mut anchors = vec![kap.mul(&kap)?];
            for y in [&dst.lo, &dst.hi] {
                if let Some(a) = kappa_block_prefix(y) {
                    if !anchors.contains(&a) {
                        anchors.push(a);
                    }
                }
            }
            for a in anchors {
                let hi = a.add(&kw)?;
                changed |= cl.push(a, Reach::Before(hi), &seg.rules, R_CARD_K)?;
            }
            Ok(changed)
        }
        _ => Ok(false),
    }
}

fn close(q: &ImplicationQuery) -> Result<Vec<Segment>> {
    let mut cl = Closure { segs: Vec::new() };
    let seed = if q.src.open {
        Reach::Before(q.src.hi.clone())
    } else {
        Reach::To(q.src.hi.clone())
    };
    cl.push(q.src.lo.clone(), seed, &[], R_HYPOTHESIS)?;
    let shift_prefixes =
        if q.class.union_rules() { summand_prefixes(&q.dst)? } else { Vec::new() };
    // Every rule consumes one segment, so a worklist visits each exactly once.
    let mut next = 0usize;
    while next < cl.segs.len() {
        let seg = cl.segs[next].clone();
        next += 1;
        extend_cofinal_steps(&mut cl, &seg)?;
        extend_cardinal_ceiling(&mut cl, &seg)?;
        extend_limit_cardinal_step(&mut cl, &seg)?;
        if q.class.t1_rules() {
            t1_limit_collapse(&mut cl, &seg)?;
            let lam = q.class.lambda().unwrap_or(CardClass::Aleph0);
            t1_lambda_tail(&mut cl, &seg, lam)?;
        }
        if let Some((bound, union_closed)) = q.class.card_bound() {
            card_collapse(&mut cl, &seg, bound, union_closed, &q.dst)?;
        }
        for g in &shift_prefixes {
            union_suffix_shift(&mut cl, &seg, g)?;
        }
        extend_repeat_summand(&mut cl, &seg, &q.dst)?;
    }
    Ok(cl.segs)
}

// ---------------------------------------------------------------------------
// Coverage walk
// ---------------------------------------------------------------------------

/// Lower boundary of the uncovered region.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Frontier {
    /// Everything strictly below `p` is covered.
    At(Ordinal),
    /// Everything strictly below `a + ω₁` is covered.
    Past(Ordinal),
    /// Everything is covered.
    Done,
}

fn frontier_done(fr: &Frontier, dst: &OrdinalInterval) -> Result<bool> {
    Ok(match fr {
        Frontier::Done => true,
        Frontier::At(p) => {
            if dst.open {
                *p >= dst.hi
            } else {
                *p > dst.hi
            }
        }
        Frontier::Past(a) => dst.hi < beyond_bound(a)?,
    })
}

fn frontier_admits(seg: &Segment, fr: &Frontier) -> Result<bool> {
    Ok(match fr {
        Frontier::At(p) => seg.lo <= *p,
        Frontier::Past(a) => seg.lo < beyond_bound(a)?,
        Frontier::Done => false,
    })
}

fn next_frontier(seg: &Segment) -> Result<Frontier> {
    Ok(match &seg.reach {
        Reach::To(x) => Frontier::At(x.succ()?),
        Reach::Before(x) => Frontier::At(x.clone()),
        Reach::CountablyBeyond(a) => Frontier::Past(a.clone()),
        Reach::Everything => Frontier::Done,
    })
}

fn frontier_better(new: &Frontier, cur: &Frontier) -> Result<bool> {
    Ok(match (new, cur) {
        (Frontier::Done, Frontier::Done) => false,
        (Frontier::Done, _) => true,
        (_, Frontier::Done) => false,
        (Frontier::At(p2), Frontier::At(p1)) => p2 > p1,
        (Frontier::Past(a), Frontier::At(p)) => *p < beyond_bound(a)?,
        (Frontier::At(p), Frontier::Past(a)) => *p >= beyond_bound(a)?,
        (Frontier::Past(a2), Frontier::Past(a1)) => a2 > a1,
    })
}

/// Greedy contiguous walk of the destination; returns the rule trace when
/// the segments cover it.
fn frontier_cover(segs: &[Segment], dst: &OrdinalInterval) -> Result<Option<Vec<&'static str>>> {
    let mut fr = Frontier::At(dst.lo.clone());
    let mut trace: Vec<&'static str> = Vec::new();
    let mut steps = 0usize;
    loop {
        if frontier_done(&fr, dst)? {
            return Ok(Some(trace));
        }
        let mut best: Option<(usize, Frontier)> = None;
        for (i, seg) in segs.iter().enumerate() {
            if !frontier_admits(seg, &fr)? {
                continue;
            }
            let nf = next_frontier(seg)?;
            if !frontier_better(&nf, &fr)? {
                continue;
            }
            let take = match &best {
                None => true,
                Some((_, b)) => frontier_better(&nf, b)?,
            };
            if take {
                best = Some((i, nf));
            }
        }
        let Some((i, nf)) = best else {
            return Ok(None);
        };
        for r in &segs[i].rules {
            if !trace.contains(r) {
                trace.push(r);
            }
        }
        fr = nf;
        steps += 1;
        if steps > segs.len() + 4 {
            return Ok(None);
        }
    }
}

// ---------------------------------------------------------------------------
// Backward point demands (union-closed classes)
// ---------------------------------------------------------------------------

fn covered_points(segs: &[Segment]) -> Vec<(Ordinal, Vec<&'static str>)> {
    let mut out: Vec<(Ordinal, Vec<&'static str>)> = Vec::new();
    for seg in segs {
        for p in endpoint_points(seg) {
            if !out.iter().any(|(q, _)| *q == p) {
                out.push((p, seg.rules.clone()));
            }
        }
    }
    out
}

/// Solve `x + c = t` over pure values by suffix matching.
fn solve_left_pure(c: &Ordinal, t: &Ordinal) -> Option<Ordinal> {
    let ct = c.terms();
    let tt = t.terms();
    if ct.is_empty() || tt.len() < ct.len() {
        return None;
    }
    let i = tt.len() - ct.len();
    if tt[i + 1..] != ct[1..] {
        return None;
    }
    let (e0, c0) = &ct[0];
    let (te, tc) = &tt[i];
    if te != e0 || tc < c0 {
        return None;
    }
    let mut xs = tt[..i].to_vec();
    if tc > c0 {
        xs.push((te.clone(), tc - c0));
    }
    let x = Ordinal::from_terms(xs).ok()?;
    (x.add(c).ok()? == *t).then_some(x)
}

/// Solve `x + g = t` over exponent values, preferring the zero-tail form.
fn solve_left_exp(g: &Exponent, t: &Exponent) -> Option<Exponent> {
    if g.kp() > 0 {
        // A second-tier right part absorbs everything; only trivial fits.
        return None;
    }
    if !g.ke().is_zero() {
        if t.tail() != g.tail() {
            return None;
        }
        let x = solve_left_pure(g.ke(), t.ke())?;
        Exponent::new(t.kp(), x, Ordinal::zero()).ok()
    } else if !g.tail().is_zero() {
        let x = solve_left_pure(g.tail(), t.tail())?;
        Exponent::new(t.kp(), t.ke().clone(), x).ok()
    } else {
        None
    }
}

/// Candidate left factors `b` with `b · p = target`; callers verify by
/// multiplying back.
fn left_factor_candidates(target: &Ordinal, p: &Ordinal) -> Result<Vec<Ordinal>> {
    let mut out = Vec::new();
    let Some(tl) = target.lead().cloned() else {
        return Ok(out);
    };
    if let Some(n) = p.as_nat() {
        if n >= 2 {
            if let Some(f) = target.as_nat() {
                if f % n == 0 {
                    out.push(Ordinal::from_nat(f / n));
                }
            } else if tl.1 % n == 0 {
                let mut t2 = target.terms().to_vec();
                t2[0].1 = tl.1 / n;
                out.push(Ordinal::from_terms(t2)?);
            }
        }
    } else if p.is_limit() {
        let pl = p.lead().cloned().expect("infinite value has a lead term");
        if let Some(e1) = solve_left_exp(&pl.0, &tl.0) {
            out.push(Ordinal::single(e1, 1));
        }
    } else {
        // Infinite successor: p = l + m with l its limit part.
        let l = p.limit_part();
        let m = p.nat_tail();
        let ll = l.lead().cloned().expect("limit part of an infinite value is infinite");
        if let Some(e1) = solve_left_exp(&ll.0, &tl.0) {
            let s = Ordinal::single(e1.clone(), 1).mul(&l)?;
            if s <= *target {
                let rest = s.left_sub(target)?;
                if let Some((re, rc)) = rest.lead().cloned() {
                    if re == e1 && rc % m == 0 {
                        let mut bt = vec![(e1, rc / m)];
                        bt.extend_from_slice(&rest.terms()[1..]);
                        out.push(Ordinal::from_terms(bt)?);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Whether a single destination point is derivable, working backwards
/// through the union-closed point rules.
fn point_reachable(
    segs: &[Segment],
    target: &Ordinal,
    depth: usize,
) -> Result<Option<Vec<&'static str>>> {
    for seg in segs {
        if admits(seg, target)? {
            return Ok(Some(seg.rules.clone()));
        }
    }
    if depth == 0 {
        return Ok(None);
    }
    // A covered suffix reappears after an arbitrary left summand.
    for (_, a) in splits_of(target)? {
        if let Some(mut ch) = point_reachable(segs, &a, depth - 1)? {
            if !ch.contains(&R_SHIFT) {
                ch.push(R_SHIFT);
            }
            return Ok(Some(ch));
        }
    }
    // A covered right factor reappears under any left factor.
    let one = Ordinal::one();
    for (p, pch) in covered_points(segs) {
        if p <= one || p >= *target {
            continue;
        }
        for b in left_factor_candidates(target, &p)? {
            if b <= one {
                continue;
            }
            if b.mul(&p).ok().as_ref() == Some(target) {
                let mut ch = pch.clone();
                if !ch.contains(&R_FACTOR) {
                    ch.push(R_FACTOR);
                }
                return Ok(Some(ch));
            }
        }
    }
    // A covered cofinality climbs to the point.
    let cf = target.cofinality();
    if !cf.is_finite() && cf < *target {
        if let Some(mut ch) = point_reachable(segs, &cf, depth - 1)? {
            if !ch.contains(&R_COF_JUMP) {
                ch.push(R_COF_JUMP);
            }
            return Ok(Some(ch));
        }
    }
    Ok(None)
}

/// Full positive side: closure, coverage walk, then point demands.
pub(crate) fn positive_closure(q: &ImplicationQuery) -> Result<Option<Vec<&'static str>>> {
    let segs = close(q)?;
    if let Some(trace) = frontier_cover(&segs, &q.dst)? {
        return Ok(Some(trace));
    }
    if q.dst.is_point() && q.class.union_rules() {
        if let Some(trace) = point_reachable(&segs, &q.dst.lo, DEMAND_DEPTH)? {
            return Ok(Some(trace));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Negative side: witness search
// ---------------------------------------------------------------------------

/// A catalog space in the class that is compact on the source but not on
/// the destination, with the two deciding catalog rules.
pub(crate) fn find_witness(
    q: &ImplicationQuery,
) -> Result<Option<(SpaceDescr, Vec<&'static str>)>> {
    let mut cands: Vec<SpaceDescr> = Vec::new();
    let mut pts = vec![q.dst.lo.clone()];
    if !q.dst.open && q.dst.hi != q.dst.lo {
        pts.push(q.dst.hi.clone());
    }
    for b in pts {
        cands.push(SpaceDescr::SBeta { beta: b.clone(), alpha: b, variant: SBetaVariant::Plain });
    }
    cands.extend(catalog_spaces());
    for s in cands {
        if s.validate().is_err() || !q.class.admits(&s) {
            continue;
        }
        // For an open source demanding compactness through the closed upper
        // end is stronger, hence still a valid witness requirement.
        let src = s.is_compact(&q.src.lo, &q.src.hi)?;
        if !src.is_yes() {
            continue;
        }
        let dst = if q.dst.open {
            s.is_compact(&q.dst.lo, &q.dst.lo)?
        } else {
            s.is_compact(&q.dst.lo, &q.dst.hi)?
        };
        if !dst.is_no() {
            continue;
        }
        let mut rules: Vec<&'static str> = Vec::new();
        for r in [src.rule(), dst.rule()].into_iter().flatten() {
            if !rules.contains(&r) {
                rules.push(r);
            }
        }
        return Ok(Some((s, rules)));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{OrdinalSampler, SampleProfile};

    fn o(s: &str) -> Ordinal {
        Ordinal::parse(s).expect("well-formed literal")
    }

    fn iv(s: &str) -> OrdinalInterval {
        s.parse().expect("well-formed interval")
    }

    fn ask(src: &str, dst: &str, class: SpaceClass) -> Verdict {
        let q = ImplicationQuery::new(iv(src), iv(dst), class);
        implies_compactness(&q).expect("query evaluates")
    }

    #[test]
    fn interval_normalization_and_parse() {
        assert_eq!(iv("[w, w*2+1)"), iv("[w, w*2]"));
        assert_eq!(iv("[5, 5]").to_string(), "[5, 5]");
        assert_eq!(iv("[w, k+)").to_string(), "[w, w^(k+))");
        assert!(iv("[w, k+)").is_open());
        assert!("[0, 3]".parse::<OrdinalInterval>().is_err());
        assert!("[5, 3]".parse::<OrdinalInterval>().is_err());
        assert!("[3, 3)".parse::<OrdinalInterval>().is_err());
        assert!("(3, 5]".parse::<OrdinalInterval>().is_err());
    }

    #[test]
    fn class_tokens_round_trip() {
        for c in SpaceClass::all() {
            assert_eq!(c.to_string().parse::<SpaceClass>().unwrap(), c);
        }
        assert!("discrete".parse::<SpaceClass>().is_err());
        assert!(implies_compactness(&ImplicationQuery::new(
            iv("[w, w]"),
            iv("[w, w]"),
            SpaceClass::LambdaT1(CardClass::Finite(3)),
        ))
        .is_err());
    }

    #[test]
    fn hypothesis_covers_itself() {
        let v = ask("[2, 5]", "[3, 5]", SpaceClass::Arbitrary);
        assert_eq!(v.rules(), ["hypothesis"]);
        assert!(ask("[k, k]", "[k, k]", SpaceClass::Arbitrary).is_implied());
    }

    #[test]
    fn cofinal_steps_extend_closed_tops() {
        // Finite stacking past the top is free.
        let v = ask("[w*2, w*2]", "[w*2, w*2+17]", SpaceClass::Arbitrary);
        assert!(v.is_implied());
        assert_eq!(v.rules(), [R_HYPOTHESIS, R_COFINAL]);
        // A full cofinality ladder: [k*2, k*w) is within reach of k*2.
        let v = ask("[k*2, k*2]", "[k*2, k*9+k+w*4+1]", SpaceClass::Arbitrary);
        assert!(v.is_implied());
    }

    #[test]
    fn cardinal_ceiling_jumps() {
        let v = ask("[w, k]", "[w, k+)", SpaceClass::Arbitrary);
        assert!(v.is_implied());
        assert!(v.rules().contains(&R_CEILING));
        // Everything countable past a covered ω.
        let v = ask("[2, w]", "[2, w^w*5+w]", SpaceClass::Arbitrary);
        assert!(v.is_implied());
        // Everything expressible past a covered κ⁺.
        let v = ask("[w, k+]", "[w, k+*3+k*2+5]", SpaceClass::Arbitrary);
        assert!(v.is_implied());
        // κ is not countably beyond anything below it.
        assert!(!ask("[2, w]", "[2, k]", SpaceClass::Arbitrary).is_implied());
    }

    #[test]
    fn limit_cardinal_step_fires_on_high_cofinality_bases() {
        // Base κ has cofinality κ > ω, so κ+ω stretches below κ+ω₁.
        let v = ask("[k+1, k+w]", "[k+1, k+w^w*3]", SpaceClass::Arbitrary);
        assert!(v.is_implied());
        assert_eq!(v.rules(), [R_HYPOTHESIS, R_LIMIT_STEP]);
        // Base κ·ω is a limit of κ-multiples.
        let v = ask("[k*w+w, k*w+w]", "[k*w+w, k*w+w^3]", SpaceClass::Arbitrary);
        assert!(v.is_implied());
        assert!(v.rules().contains(&R_LIMIT_STEP));
        // Second-tier base: κ⁺·2 + κ reaches below κ⁺·3.
        let v = ask("[k+*2+1, k+*2+k]", "[k+*2+1, k+*2+k*5+1]", SpaceClass::Arbitrary);
        assert!(v.is_implied());
        assert!(v.rules().contains(&R_LIMIT_STEP));
        // A pure base of countable cofinality gives no such stretch.
        assert!(!ask("[w*2, w^2+w]", "[w*2, w^2*2+5]", SpaceClass::Arbitrary).is_implied());
    }

    #[test]
    fn repeat_summand_inflates_coefficients() {
        let v = ask("[k+k, k+k]", "[k+k+k, k+k+k]", SpaceClass::Arbitrary);
        assert!(v.is_implied());
        // A successor point dodges the cofinality ladder entirely.
        let v = ask("[k*2+1, k*2+1]", "[k*4+1, k*4+1]", SpaceClass::Arbitrary);
        assert!(v.is_implied());
        assert_eq!(v.rules(), [R_HYPOTHESIS, R_REPEAT]);
        // Chained with the cofinality ladder it fills the interval.
        let v = ask("[k*2, k*2]", "[k*3, k*7+w]", SpaceClass::Arbitrary);
        assert!(v.is_implied());
        // Doubling the whole point.
        let v = ask("[w^2+w, w^2+w]", "[w^2*2+w, w^2*2+w]", SpaceClass::Arbitrary);
        assert!(v.is_implied());
        assert_eq!(v.rules(), [R_HYPOTHESIS, R_REPEAT]);
    }

    #[test]
    fn t1_collapse_reaches_down_and_countably_up() {
        let v = ask("[w+1, w+1]", "[w, w]", SpaceClass::T1);
        assert!(v.is_implied());
        assert_eq!(v.rules(), [R_HYPOTHESIS, R_T1]);
        // The same collapse stretches the reach countably upward.
        let v = ask("[w+1, w+1]", "[w, w^w+3]", SpaceClass::T1);
        assert!(v.is_implied());
        // Down past a κ-sized tail is out of reach of the ω-collapse, and
        // the ordinal line of length κ knows it.
        let v = ask("[k+w, k+w]", "[k, k]", SpaceClass::T1);
        assert_eq!(v.witness(), Some(&SpaceDescr::Ord { card: CardClass::Kappa }));
        assert!(v.rules().contains(&"ord.club-filter"));
        // Arbitrary spaces do not collapse.
        let v = ask("[w+1, w+1]", "[w, w]", SpaceClass::Arbitrary);
        assert_eq!(v.witness(), Some(&SpaceDescr::Iit { card: CardClass::Aleph0 }));
    }

    #[test]
    fn lambda_t1_tail_stretches_to_kappa_plus() {
        // The κ-sized tail past the base κ collapses the point onto it.
        let v = ask("[k*2+5, k*2+5]", "[k, k*5+1]", SpaceClass::LambdaT1(CardClass::Kappa));
        assert!(v.is_implied());
        assert_eq!(v.rules(), [R_HYPOTHESIS, R_LAMBDA]);
        // The κ⁺ degree pulls everything from the base κ⁺ upward.
        let v = ask(
            "[k+ + w, k+ + w]",
            "[k+*3+5, k+*3+5]",
            SpaceClass::LambdaT1(CardClass::KappaPlus),
        );
        assert!(v.is_implied());
        assert!(v.rules().contains(&R_LAMBDA));
        // But the collapse must not cross a cardinal gap downward: the
        // countable discrete space separates these.
        let v = ask("[k*2+5, k*2+5]", "[w^2, w^2]", SpaceClass::LambdaT1(CardClass::Kappa));
        assert_eq!(v.witness(), Some(&SpaceDescr::Discrete { card: CardClass::Aleph0 }));
        // ω-degree separation is exactly the plain collapse.
        let v = ask("[w+1, w+1]", "[w, w]", SpaceClass::LambdaT1(CardClass::Aleph0));
        assert!(v.is_implied());
    }

    #[test]
    fn union_closed_point_rules() {
        // Left factor: ω·2 covered, so ω·(ω·2) follows.
        let v = ask("[w*2, w*2]", "[w^2*2, w^2*2]", SpaceClass::UnionClosed);
        assert!(v.is_implied());
        assert!(v.rules().contains(&R_FACTOR));
        assert!(ask("[w*2, w*2]", "[w^2*2, w^2*2]", SpaceClass::Arbitrary).is_unknown());
        // Suffix shift: a countable window reappears past κ·2.
        let v = ask("[w, w]", "[k*2+w^w, k*2+w^w]", SpaceClass::UnionClosed);
        assert!(v.is_implied());
        assert!(v.rules().contains(&R_SHIFT));
        // A shift over the κ⁺ prefix carries the κ-window upward whole.
        let v = ask("[k, k]", "[k+ + k, k+ + k]", SpaceClass::UnionClosed);
        assert!(v.is_implied());
        assert!(v.rules().contains(&R_SHIFT));
        // The same query without unions has a genuine separator.
        let v = ask("[k, k]", "[k+ + k, k+ + k]", SpaceClass::Arbitrary);
        assert!(v.is_not_implied());
        assert!(v.rules().contains(&"sbeta.cardinality-gap"));
        // Cofinality jump: ω covered, so the ω-cofinal power κ^ω follows.
        let v = ask("[w, w]", "[k^w, k^w]", SpaceClass::UnionClosed);
        assert!(v.is_implied());
        assert!(v.rules().contains(&R_COF_JUMP));
        assert!(!ask("[w, w]", "[k^w, k^w]", SpaceClass::Arbitrary).is_implied());
    }

    #[test]
    fn union_closed_witnesses_respect_the_class() {
        let v = ask("[w, w]", "[k, k]", SpaceClass::UnionClosed);
        assert_eq!(v.witness(), Some(&SpaceDescr::Iit { card: CardClass::Kappa }));
    }

    #[test]
    fn card_bound_collapses() {
        let v = ask("[k*k, k*k]", "[k*k+k, k*k+k]", SpaceClass::CardBound(CardClass::Kappa));
        assert!(v.is_implied());
        // A κ-multiple trigger unlocks the window past the κ-power anchor.
        let v = ask(
            "[k*2, k*2]",
            "[k*k+k*3+1, k*k+k*3+1]",
            SpaceClass::CardBound(CardClass::Kappa),
        );
        assert!(v.is_implied());
        assert_eq!(v.rules(), [R_HYPOTHESIS, R_CARD_K]);
        let v = ask(
            "[w*2, w*2]",
            "[w^2+w*3+5, w^2+w*3+5]",
            SpaceClass::CardBound(CardClass::Aleph0),
        );
        assert!(v.is_implied());
        assert_eq!(v.rules(), [R_HYPOTHESIS, R_CARD_W]);
        // The union-closed variant triggers from successor points too.
        let v = ask(
            "[w*2+1, w*2+1]",
            "[w^5+3, w^5+3]",
            SpaceClass::CardBoundUnionClosed(CardClass::Aleph0),
        );
        assert!(v.is_implied());
        // Without the κ-multiple trigger the square separates.
        let v = ask("[k+1, k+1]", "[k*k, k*k]", SpaceClass::CardBound(CardClass::Kappa));
        assert_eq!(v.witness(), Some(&SpaceDescr::KappaKappa));
    }

    #[test]
    fn frozen_negative_witnesses() {
        let v = ask("[k+k, k+k]", "[k*k, k*k]", SpaceClass::Arbitrary);
        let w = SpaceDescr::SBeta { beta: o("k*k"), alpha: o("k*k"), variant: SBetaVariant::Plain };
        assert_eq!(v.witness(), Some(&w));
        assert_eq!(v.rules(), ["sbeta.no-collapse-to-double", "sbeta.cover-order-type"]);
        let v = ask("[k+1, k+1]", "[k*2, k*2]", SpaceClass::Arbitrary);
        assert_eq!(v.witness(), Some(&SpaceDescr::KappaKappa));
    }

    #[test]
    fn genuinely_open_questions_stay_unknown() {
        assert!(ask("[k*2, k*2]", "[k*w+1, k*w+1]", SpaceClass::Arbitrary).is_unknown());
        assert!(ask("[k+1, k+1]", "[k*w+1, k*w+1]", SpaceClass::Arbitrary).is_unknown());
    }

    #[test]
    fn verdict_serialization_shapes() {
        let v = ask("[w, k]", "[w, k+)", SpaceClass::Arbitrary);
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["verdict"], "implied");
        assert!(j["rules"].as_array().is_some_and(|r| !r.is_empty()));
        assert!(j.get("witness").is_none());

        let v = ask("[w+1, w+1]", "[w, w]", SpaceClass::Arbitrary);
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["verdict"], "not_implied");
        assert_eq!(j["witness"]["type"], "iit");

        let v = ask("[k*2, k*2]", "[k*w+1, k*w+1]", SpaceClass::Arbitrary);
        assert_eq!(serde_json::to_value(&v).unwrap()["verdict"], "unknown");

        let q = ImplicationQuery::new(iv("[w, w]"), iv("[w, k+)"), SpaceClass::T1);
        let text = serde_json::to_string(&q).unwrap();
        let back: ImplicationQuery = serde_json::from_str(&text).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn implied_verdicts_survive_shrinking_the_destination() {
        let implied = [
            ("[w, w*2]", "[w, w*2+17]", SpaceClass::Arbitrary),
            ("[w, k]", "[w, k*2]", SpaceClass::Arbitrary),
            ("[k*2, k*2]", "[k*3, k*7+w]", SpaceClass::Arbitrary),
            ("[w+1, w+1]", "[w, w^w+3]", SpaceClass::T1),
            ("[k*2+5, k*2+5]", "[k, k*5+1]", SpaceClass::LambdaT1(CardClass::Kappa)),
        ];
        for (src, dst, class) in implied {
            let base = ask(src, dst, class);
            assert!(base.is_implied(), "base query {src} => {dst} under {class}");
            let d = iv(dst);
            for point in [d.lo().clone(), d.hi().clone()] {
                let q = ImplicationQuery::new(
                    iv(src),
                    OrdinalInterval::point(point).unwrap(),
                    class,
                );
                assert!(
                    implies_compactness(&q).unwrap().is_implied(),
                    "shrunk query {q:?}"
                );
            }
            // Widening the source only strengthens the hypothesis.
            let s = iv(src);
            let wide = OrdinalInterval::closed(
                Ordinal::one(),
                s.hi().add(&o("w")).unwrap(),
            )
            .unwrap();
            let q = ImplicationQuery::new(wide, iv(dst), class);
            assert!(implies_compactness(&q).unwrap().is_implied(), "widened {q:?}");
        }
    }

    #[test]
    fn positive_and_negative_sides_never_both_fire() {
        let profile = SampleProfile {
            allow_kappa: true,
            allow_kplus: true,
            max_terms: 3,
            max_coeff: 3,
            max_depth: 2,
        };
        let mut gen = OrdinalSampler::with_profile(0x5eed_0451, profile);
        let classes = SpaceClass::all();
        let mut implied = 0usize;
        let mut refuted = 0usize;
        for i in 0..1500 {
            let lo1 = gen.next_nonzero();
            let hi1 = lo1.add(&gen.next()).unwrap();
            let lo2 = gen.next_nonzero();
            let hi2 = lo2.add(&gen.next()).unwrap();
            let q = ImplicationQuery::new(
                OrdinalInterval::closed(lo1, hi1).unwrap(),
                OrdinalInterval::closed(lo2, hi2).unwrap(),
                classes[i % classes.len()],
            );
            let pos = positive_closure(&q).unwrap();
            let neg = find_witness(&q).unwrap();
            assert!(
                !(pos.is_some() && neg.is_some()),
                "conflict on {q:?}: rules {:?} against witness {:?}",
                pos,
                neg
            );
            implied += usize::from(pos.is_some());
            refuted += usize::from(neg.is_some());
        }
        // The generator must exercise both sides, not dodge them.
        assert!(implied > 50, "only {implied} implied queries sampled");
        assert!(refuted > 50, "only {refuted} refuted queries sampled");
    }

    #[test]
    fn implied_verdicts_agree_with_every_admitted_catalog_space() {
        let cases = [
            ("[w, w*2]", "[w, w*2+17]", SpaceClass::Arbitrary),
            ("[k+k, k+k]", "[k+k+k, k+k+k]", SpaceClass::Arbitrary),
            ("[w, k]", "[w, k+)", SpaceClass::Arbitrary),
            ("[w+1, w+1]", "[w, w]", SpaceClass::T1),
            ("[k*2+5, k*2+5]", "[k*5+1, k*5+1]", SpaceClass::LambdaT1(CardClass::Kappa)),
            ("[k, k]", "[k+ + k, k+ + k]", SpaceClass::UnionClosed),
            ("[k*k, k*k]", "[k*k+k, k*k+k]", SpaceClass::CardBound(CardClass::Kappa)),
            ("[w*2, w*2]", "[w^2+w*3+5, w^2+w*3+5]", SpaceClass::CardBound(CardClass::Aleph0)),
        ];
        for (src, dst, class) in cases {
            let v = ask(src, dst, class);
            assert!(v.is_implied(), "{src} => {dst} under {class}");
            let (s, d) = (iv(src), iv(dst));
            for space in catalog_spaces() {
                if !class.admits(&space) {
                    continue;
                }
                let at_src = space.is_compact(s.lo(), s.hi()).unwrap();
                let at_dst = if d.is_open() {
                    space.is_compact(d.lo(), d.lo()).unwrap()
                } else {
                    space.is_compact(d.lo(), d.hi()).unwrap()
                };
                assert!(
                    !(at_src.is_yes() && at_dst.is_no()),
                    "catalog space {space:?} contradicts {src} => {dst} under {class}"
                );
            }
        }
    }
}
