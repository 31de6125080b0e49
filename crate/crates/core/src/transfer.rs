//! Executable piecewise maps between ordinals with exact preimages.
//!
//! A [`PieceMap`] is a function `f : [0, domain) → [0, codomain)` given by
//! finitely many interval pieces, each with a closed-form kind (shift,
//! constant, even/odd interleaving, block quotient, cofinal rank, …). For
//! every kind the preimage of an interval is again a finite union of
//! intervals, so `f⁻¹(K)` of an [`IntervalSet`] is computed exactly and its
//! order type is exact.
//!
//! Such maps certify compactness transfer: if `f : α′ → α` is injective
//! (or the open families are closed under unions) and every `K ⊆ α` of
//! order type `< β` has `f⁻¹(K)` of order type `< β′`, then every
//! `[β, α]`-compact space is `[β′, α′]`-compact. [`check_transfer`]
//! verifies the order-type bound over a sample family, and the builtin
//! constructors produce the standard map shapes (successor rotation,
//! doubling interleave, tail rotation, cardinality injections, prefix and
//! block collapses, cofinal rank).

use crate::intervals::IntervalSet;
use crate::{Error, Exponent, Ordinal, Result};

/// Closed-form behavior of one piece `[lo, hi)` of a [`PieceMap`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapKind {
    /// `f(ε) = ε`.
    Identity,
    /// Translates the piece to start at `base`: `f(lo + ζ) = base + ζ`.
    Shift { base: Ordinal },
    /// `f(ε) = point` for every `ε` in the piece.
    ConstantTo { point: Ordinal },
    /// `f(ε) = ε + 1`; the piece must lie below `ω`.
    SuccessorShiftBelowOmega,
    /// `f(lo + λ + m) = base + λ + 2m (+1)` for `λ` limit, `m < ω`; the
    /// piece length must be a limit ordinal so images stay in range.
    EvenOddInterleave { base: Ordinal, odd: bool },
    /// `f(ε) = ζ` where `ε = block·ζ + η`, `η < block`.
    BlockCollapse { block: Ordinal },
    /// `f(ε) =` least `η` with `ε < γ_η`, for the canonical sequence
    /// `(γ_η)` cofinal in the domain; the codomain is `cf(domain)`.
    CofinalCollapse,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub lo: Ordinal,
    pub hi: Ordinal,
    pub kind: MapKind,
}

/// An interval-piecewise map `[0, domain) → [0, codomain)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceMap {
    name: String,
    domain: Ordinal,
    codomain: Ordinal,
    pieces: Vec<Piece>,
    injective: bool,
}

/// Result of checking the transfer bound over a sample family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransferOutcome {
    Pass { checked: usize },
    /// A sampled `K` with `ot(K) < β` whose preimage has order type `≥ β′`.
    Fail { k: IntervalSet, preimage_ot: Ordinal },
}

impl PieceMap {
    /// Validates that the pieces partition `[0, domain)` contiguously and
    /// that each kind's side conditions hold; derives the injectivity flag
    /// from the piece image descriptors.
    pub fn new(
        name: impl Into<String>,
        domain: Ordinal,
        codomain: Ordinal,
        pieces: Vec<Piece>,
    ) -> Result<Self> {
        let mut pieces: Vec<Piece> = pieces.into_iter().filter(|p| p.lo < p.hi).collect();
        pieces.sort_by(|a, b| a.lo.cmp(&b.lo));
        let mut cursor = Ordinal::zero();
        for p in &pieces {
            if p.lo != cursor {
                return Err(Error::Invalid(format!(
                    "pieces must partition [0, {domain}): gap or overlap at {}",
                    p.lo
                )));
            }
            cursor = p.hi.clone();
            match &p.kind {
                MapKind::SuccessorShiftBelowOmega => {
                    if p.hi > Ordinal::omega() {
                        return Err(Error::Invalid(
                            "successor shift only applies below w".into(),
                        ));
                    }
                }
                MapKind::EvenOddInterleave { .. } => {
                    let len = p.lo.left_sub(&p.hi)?;
                    if !len.is_limit() {
                        return Err(Error::Invalid(
                            "interleave pieces must have limit length".into(),
                        ));
                    }
                }
                MapKind::BlockCollapse { block } => {
                    if block.is_zero() {
                        return Err(Error::Invalid("block size must be nonzero".into()));
                    }
                }
                MapKind::CofinalCollapse => {
                    if !p.lo.is_zero() || p.hi != domain {
                        return Err(Error::Invalid(
                            "cofinal collapse must cover the whole domain".into(),
                        ));
                    }
                    let nu = domain.cofinality();
                    if nu < Ordinal::omega() {
                        return Err(Error::RequiresInfinite(format!("cf({domain})")));
                    }
                    if codomain != nu {
                        return Err(Error::Invalid(format!(
                            "cofinal collapse codomain must be cf({domain}) = {nu}"
                        )));
                    }
                }
                _ => {}
            }
        }
        if cursor != domain {
            return Err(Error::Invalid(format!(
                "pieces cover [0, {cursor}) but the domain is [0, {domain})"
            )));
        }
        let injective = derive_injective(&pieces)?;
        Ok(PieceMap { name: name.into(), domain, codomain, pieces, injective })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &Ordinal {
        &self.domain
    }

    pub fn codomain(&self) -> &Ordinal {
        &self.codomain
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn is_injective(&self) -> bool {
        self.injective
    }

    /// Image of a single point; errors when `e` is outside the domain.
    pub fn apply(&self, e: &Ordinal) -> Result<Ordinal> {
        let piece = self
            .pieces
            .iter()
            .find(|p| p.lo <= *e && *e < p.hi)
            .ok_or_else(|| Error::OutOfRange {
                what: e.to_string(),
                ambient: format!("[0, {})", self.domain),
            })?;
        match &piece.kind {
            MapKind::Identity => Ok(e.clone()),
            MapKind::Shift { base } => base.add(&piece.lo.left_sub(e)?),
            MapKind::ConstantTo { point } => Ok(point.clone()),
            MapKind::SuccessorShiftBelowOmega => e.succ(),
            MapKind::EvenOddInterleave { base, odd } => {
                let z = piece.lo.left_sub(e)?;
                let m = z
                    .nat_tail()
                    .checked_mul(2)
                    .and_then(|x| x.checked_add(u64::from(*odd)))
                    .ok_or(Error::CoefficientOverflow)?;
                base.add(&z.limit_part())?.add(&Ordinal::from_nat(m))
            }
            MapKind::BlockCollapse { block } => Ok(e.div_rem(block)?.0),
            MapKind::CofinalCollapse => rank_in(&self.domain, e),
        }
    }

    /// Exact preimage of an interval set under the map.
    pub fn preimage(&self, k: &IntervalSet) -> Result<IntervalSet> {
        if k.bound() != &self.codomain {
            return Err(Error::BoundMismatch(
                k.bound().to_string(),
                self.codomain.to_string(),
            ));
        }
        let mut out = Vec::new();
        for piece in &self.pieces {
            for (x, y) in k.pieces() {
                piece_preimage(piece, &self.domain, x, y, &mut out)?;
            }
        }
        IntervalSet::new(self.domain.clone(), out)
    }

    /// Order type of `f⁻¹(K)`; exact for every kind.
    pub fn preimage_order_type(&self, k: &IntervalSet) -> Result<Ordinal> {
        Ok(self.preimage(k)?.order_type())
    }
}

/// Preimage of `[x, y)` restricted to one piece, appended to `out`.
fn piece_preimage(
    piece: &Piece,
    domain: &Ordinal,
    x: &Ordinal,
    y: &Ordinal,
    out: &mut Vec<(Ordinal, Ordinal)>,
) -> Result<()> {
    let (lo, hi) = (&piece.lo, &piece.hi);
    match &piece.kind {
        MapKind::Identity => {
            let a = std::cmp::max(lo, x);
            let b = std::cmp::min(hi, y);
            if a < b {
                out.push((a.clone(), b.clone()));
            }
        }
        MapKind::Shift { base } => {
            let len = lo.left_sub(hi)?;
            let end = base.add(&len)?;
            let a = std::cmp::max(base, x);
            let b = std::cmp::min(&end, y);
            if a < b {
                out.push((lo.add(&base.left_sub(a)?)?, lo.add(&base.left_sub(b)?)?));
            }
        }
        MapKind::ConstantTo { point } => {
            if x <= point && point < y {
                out.push((lo.clone(), hi.clone()));
            }
        }
        MapKind::SuccessorShiftBelowOmega => {
            // f(ε) = ε + 1 on a finite-or-ω piece: shift the window down.
            let a = match x.as_nat() {
                Some(0) => lo.clone(),
                Some(n) => std::cmp::max(lo.clone(), Ordinal::from_nat(n - 1)),
                None => return Ok(()), // images are < ω
            };
            let b = match y.as_nat() {
                Some(0) => return Ok(()),
                Some(n) => std::cmp::min(hi.clone(), Ordinal::from_nat(n - 1)),
                None => hi.clone(),
            };
            if a < b {
                out.push((a, b));
            }
        }
        MapKind::EvenOddInterleave { base, odd } => {
            let len = lo.left_sub(hi)?;
            let end = base.add(&len)?;
            let x2 = std::cmp::max(base, x);
            let y2 = std::cmp::min(&end, y);
            if x2 >= y2 {
                return Ok(());
            }
            let dx = base.left_sub(x2)?;
            let dy = base.left_sub(y2)?;
            let (l1, m1) = (dx.limit_part(), dx.nat_tail());
            let (l2, m2) = (dy.limit_part(), dy.nat_tail());
            // Least m with 2m+odd ≥ t; equally the count of m with
            // 2m+odd < t.
            let half_up = |t: u64| (t + 1 - u64::from(*odd)) / 2;
            if l1 == l2 {
                let (a, b) = (half_up(m1), half_up(m2));
                if a < b {
                    let start = lo.add(&l1)?;
                    out.push((start.add(&Ordinal::from_nat(a))?, start.add(&Ordinal::from_nat(b))?));
                }
            } else {
                // Tail of the first block, then all full blocks below l2.
                let start = lo.add(&l1)?.add(&Ordinal::from_nat(half_up(m1)))?;
                out.push((start, lo.add(&l2)?));
                let b = half_up(m2);
                if b > 0 {
                    let top = lo.add(&l2)?;
                    out.push((top.clone(), top.add(&Ordinal::from_nat(b))?));
                }
            }
        }
        MapKind::BlockCollapse { block } => {
            let a = std::cmp::max(lo.clone(), block.mul(x)?);
            let b = std::cmp::min(hi.clone(), block.mul(y)?);
            if a < b {
                out.push((a, b));
            }
        }
        MapKind::CofinalCollapse => {
            let a = stage_boundary(domain, x)?;
            let b = stage_boundary(domain, y)?;
            if a < b {
                out.push((a, b));
            }
        }
    }
    Ok(())
}

/// Conservative per-piece image descriptor: a codomain interval plus, for
/// interleaves, the parity relative to `base`.
struct ImageDescr {
    lo: Ordinal,
    hi: Ordinal,
    parity: Option<(Ordinal, bool)>,
    injective: bool,
}

fn image_descr(piece: &Piece) -> Result<Option<ImageDescr>> {
    let (lo, hi) = (&piece.lo, &piece.hi);
    let len = lo.left_sub(hi)?;
    Ok(match &piece.kind {
        MapKind::Identity => Some(ImageDescr {
            lo: lo.clone(),
            hi: hi.clone(),
            parity: None,
            injective: true,
        }),
        MapKind::Shift { base } => Some(ImageDescr {
            lo: base.clone(),
            hi: base.add(&len)?,
            parity: None,
            injective: true,
        }),
        MapKind::ConstantTo { point } => Some(ImageDescr {
            lo: point.clone(),
            hi: point.succ()?,
            parity: None,
            injective: len == Ordinal::one(),
        }),
        MapKind::SuccessorShiftBelowOmega => Some(ImageDescr {
            lo: lo.succ()?,
            hi: if *hi == Ordinal::omega() { hi.clone() } else { hi.succ()? },
            parity: None,
            injective: true,
        }),
        MapKind::EvenOddInterleave { base, odd } => Some(ImageDescr {
            lo: base.clone(),
            hi: base.add(&len)?,
            parity: Some((base.clone(), *odd)),
            injective: true,
        }),
        // Block and cofinal collapses identify whole blocks; reported
        // non-injective without further analysis.
        MapKind::BlockCollapse { .. } | MapKind::CofinalCollapse => None,
    })
}

fn derive_injective(pieces: &[Piece]) -> Result<bool> {
    let mut images = Vec::with_capacity(pieces.len());
    for p in pieces {
        match image_descr(p)? {
            Some(d) if d.injective => images.push(d),
            _ => return Ok(false),
        }
    }
    for (i, a) in images.iter().enumerate() {
        for b in &images[..i] {
            let overlap = a.lo < b.hi && b.lo < a.hi;
            if !overlap {
                continue;
            }
            match (&a.parity, &b.parity) {
                (Some((ba, pa)), Some((bb, pb))) if ba == bb && pa != pb => {}
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}

/// Splits a nonzero ordinal as `r + ω^e` (one unit off the last term).
fn split_last(x: &Ordinal) -> (Ordinal, Exponent) {
    let terms = x.terms();
    let (e, c) = terms.last().expect("nonzero ordinal");
    let mut rest = terms[..terms.len() - 1].to_vec();
    if *c > 1 {
        rest.push((e.clone(), c - 1));
    }
    (Ordinal::from_terms_unchecked(rest), e.clone())
}

/// `m`-th member of the canonical ω-indexed sequence cofinal in the limit
/// `l` (requires `cf(l) = ω`): with `l = r + ω^e`, the stage is
/// `r + ω^{e−1}·(m+1)` when the exponent value is a successor, else
/// `r + ω^{stage_m(e)}`.
pub(crate) fn omega_stage(l: &Ordinal, m: u64) -> Result<Ordinal> {
    let (r, e) = split_last(l);
    let ev = e.to_ordinal();
    if ev.is_successor() {
        let f = ev.pred()?;
        r.add(&Ordinal::single(f.to_exponent()?, m + 1))
    } else {
        let inner = omega_stage(&ev, m)?;
        r.add(&Ordinal::single(inner.to_exponent()?, 1))
    }
}

/// `B(x) = sup { γ_η : η < x }` for the canonical sequence cofinal in
/// `alpha`: the boundary below which all points have rank `< x`. Accepts
/// `0 ≤ x ≤ cf(alpha)`, with `B(0) = 0` and `B(cf α) = α`.
fn stage_boundary(alpha: &Ordinal, x: &Ordinal) -> Result<Ordinal> {
    if x.is_zero() {
        return Ok(Ordinal::zero());
    }
    let nu = alpha.cofinality();
    if *x >= nu {
        return Ok(alpha.clone());
    }
    let (r, e) = split_last(alpha);
    if nu == Ordinal::omega() {
        let m = x.as_nat().expect("index below w is finite");
        let ev = e.to_ordinal();
        if ev.is_successor() {
            let f = ev.pred()?;
            r.add(&Ordinal::single(f.to_exponent()?, m))
        } else {
            let inner = omega_stage(&ev, m - 1)?;
            r.add(&Ordinal::single(inner.to_exponent()?, 1))
        }
    } else if nu == Ordinal::kappa() {
        // e = κ·(ξ+1): stages run through ω^{κ·ξ + η}, η < κ.
        let xi = e.ke().pred()?;
        let xp = if x.is_successor() { x.pred()? } else { x.clone() };
        r.add(&Ordinal::single(Exponent::new(0, xi, xp)?, 1))
    } else {
        // e = κ⁺, so ω^e = κ⁺ and the canonical sequence is γ_η = r + η.
        let xp = if x.is_successor() { x.pred()? } else { x.clone() };
        r.add(&xp)
    }
}

/// Rank of `e < alpha` in the canonical cofinal sequence: the least `η`
/// with `e < γ_η`; always `< cf(alpha)`.
fn rank_in(alpha: &Ordinal, e: &Ordinal) -> Result<Ordinal> {
    let (r, exp) = split_last(alpha);
    if *e < r {
        return Ok(Ordinal::zero());
    }
    let z = r.left_sub(e)?;
    let nu = alpha.cofinality();
    if nu == Ordinal::omega() {
        let ev = exp.to_ordinal();
        if ev.is_successor() {
            let unit = Ordinal::single(ev.pred()?.to_exponent()?, 1);
            Ok(z.div_rem(&unit)?.0)
        } else if z.is_zero() {
            Ok(Ordinal::zero())
        } else {
            let g = z.lead().expect("nonzero").0.to_ordinal();
            rank_in(&ev, &g)
        }
    } else if nu == Ordinal::kappa() {
        let xi = exp.ke().pred()?;
        if z.is_zero() {
            return Ok(Ordinal::zero());
        }
        let g = z.lead().expect("nonzero").0.clone();
        if *g.ke() < xi {
            Ok(Ordinal::zero())
        } else {
            g.tail().succ()
        }
    } else {
        z.succ()
    }
}

/// Checks `ot(K) < β ⇒ ot(f⁻¹(K)) < β′` over the sample family; samples
/// with `ot(K) ≥ β` are skipped.
pub fn check_transfer(
    f: &PieceMap,
    beta: &Ordinal,
    beta_prime: &Ordinal,
    samples: &[IntervalSet],
) -> Result<TransferOutcome> {
    let mut checked = 0usize;
    for k in samples {
        if k.order_type() >= *beta {
            continue;
        }
        checked += 1;
        let pre = f.preimage_order_type(k)?;
        if pre >= *beta_prime {
            return Ok(TransferOutcome::Fail { k: k.clone(), preimage_ot: pre });
        }
    }
    Ok(TransferOutcome::Pass { checked })
}

/// Deterministic sample family for [`check_transfer`]: pseudo-random
/// interval subsets of the codomain plus boundary-straddling hand-built
/// sets around the map's anchors.
pub fn sample_family(f: &PieceMap, count: usize, seed: u64) -> Vec<IntervalSet> {
    let bound = f.codomain().clone();
    let mut out = IntervalSet::full(bound.clone()).sample_subsets(count, seed);
    let mut anchors: Vec<Ordinal> = vec![
        Ordinal::zero(),
        Ordinal::one(),
        Ordinal::from_nat(2),
        Ordinal::from_nat(3),
    ];
    for p in f.pieces() {
        match &p.kind {
            MapKind::Shift { base } => anchors.push(base.clone()),
            MapKind::ConstantTo { point } => anchors.push(point.clone()),
            MapKind::EvenOddInterleave { base, .. } => {
                anchors.push(base.clone());
                if let Ok(b) = base.add(&Ordinal::from_nat(3)) {
                    anchors.push(b);
                }
            }
            MapKind::BlockCollapse { block } => {
                anchors.push(block.clone());
                if let Ok(b) = block.mul(&Ordinal::from_nat(2)) {
                    anchors.push(b);
                }
            }
            MapKind::CofinalCollapse => {
                for m in 1..=3u64 {
                    if let Ok(b) = stage_boundary(f.domain(), &Ordinal::from_nat(m)) {
                        if b < bound {
                            anchors.push(b);
                        }
                    }
                }
            }
            _ => {}
        }
    }
    // Partial sums of the codomain normal form are natural cut points.
    let mut acc = Ordinal::zero();
    for (e, c) in bound.terms() {
        for take in [1, *c] {
            if let Ok(next) = acc.add(&Ordinal::single(e.clone(), take)) {
                anchors.push(next.clone());
            }
        }
        acc = acc.add(&Ordinal::single(e.clone(), *c)).expect("partial sum fits");
    }
    anchors.retain(|a| *a < bound);
    anchors.sort();
    anchors.dedup();
    for a in &anchors {
        let succ = a.succ().expect("singleton end");
        if let Ok(s) = IntervalSet::new(bound.clone(), vec![(Ordinal::zero(), a.clone())]) {
            out.push(s);
        }
        if let Ok(s) = IntervalSet::new(bound.clone(), vec![(a.clone(), succ.clone())]) {
            out.push(s);
        }
        if let Ok(s) = IntervalSet::new(bound.clone(), vec![(a.clone(), bound.clone())]) {
            out.push(s);
        }
    }
    for pair in anchors.windows(2) {
        if let Ok(s) = IntervalSet::new(bound.clone(), vec![(pair[0].clone(), pair[1].clone())]) {
            out.push(s);
        }
    }
    out
}

fn require_nonzero(op: &'static str, xs: &[&Ordinal]) -> Result<()> {
    if xs.iter().any(|x| x.is_zero()) {
        return Err(Error::ZeroArgument(op));
    }
    Ok(())
}

/// `f : α+1 → α` rotating the top point to 0 through a successor shift on
/// the finite part; injective. Requires `α` infinite.
pub fn succ_rotation(alpha: &Ordinal) -> Result<PieceMap> {
    require_nonzero("succ_rotation", &[alpha])?;
    if alpha.is_finite() {
        return Err(Error::RequiresInfinite(alpha.to_string()));
    }
    let pieces = vec![
        Piece { lo: Ordinal::zero(), hi: Ordinal::omega(), kind: MapKind::SuccessorShiftBelowOmega },
        Piece { lo: Ordinal::omega(), hi: alpha.clone(), kind: MapKind::Identity },
        Piece { lo: alpha.clone(), hi: alpha.succ()?, kind: MapKind::ConstantTo { point: Ordinal::zero() } },
    ];
    PieceMap::new(format!("succ_rotation({alpha})"), alpha.succ()?, alpha.clone(), pieces)
}

/// `f : γ+α+α → γ+α` interleaving the two copies of the limit part of `α`
/// onto even and odd offsets; injective. Requires `α` infinite.
pub fn doubling_interleave(gamma: &Ordinal, alpha: &Ordinal) -> Result<PieceMap> {
    require_nonzero("doubling_interleave", &[alpha])?;
    if alpha.is_finite() {
        return Err(Error::RequiresInfinite(alpha.to_string()));
    }
    let limit = alpha.limit_part();
    let n = alpha.nat_tail();
    let d1 = gamma.add(&limit)?;
    let d2 = d1.add(&limit)?;
    let d3 = d2.add(&Ordinal::from_nat(n))?;
    let mut pieces = vec![
        Piece {
            lo: gamma.clone(),
            hi: d1.clone(),
            kind: MapKind::EvenOddInterleave { base: gamma.clone(), odd: false },
        },
        Piece {
            lo: d1.clone(),
            hi: d2.clone(),
            kind: MapKind::EvenOddInterleave { base: gamma.clone(), odd: true },
        },
    ];
    if !gamma.is_zero() {
        pieces.push(Piece { lo: Ordinal::zero(), hi: gamma.clone(), kind: MapKind::Identity });
    }
    if n > 0 {
        pieces.push(Piece { lo: d2, hi: d3.clone(), kind: MapKind::Shift { base: d1 } });
    }
    PieceMap::new(
        format!("doubling_interleave({gamma}, {alpha})"),
        d3,
        gamma.add(alpha)?,
        pieces,
    )
}

/// `f : α+δ → α` moving the tail copy of `δ` to the bottom: `f(ε) = δ+ε`
/// below `α`, `f(α+η) = η`; injective. Requires `δ + α = α` and
/// `δ ≤ cf(α)`.
pub fn tail_rotation(alpha: &Ordinal, delta: &Ordinal) -> Result<PieceMap> {
    require_nonzero("tail_rotation", &[alpha, delta])?;
    if delta.add(alpha)? != *alpha {
        return Err(Error::Invalid(format!("{delta} is not absorbed by {alpha}")));
    }
    if *delta > alpha.cofinality() {
        return Err(Error::Invalid(format!("{delta} exceeds cf({alpha})")));
    }
    let pieces = vec![
        Piece { lo: Ordinal::zero(), hi: alpha.clone(), kind: MapKind::Shift { base: delta.clone() } },
        Piece {
            lo: alpha.clone(),
            hi: alpha.add(delta)?,
            kind: MapKind::Shift { base: Ordinal::zero() },
        },
    ];
    PieceMap::new(
        format!("tail_rotation({alpha}, {delta})"),
        alpha.add(delta)?,
        alpha.clone(),
        pieces,
    )
}

/// Step map extending a compactness interval past `α` by `δ ≤ cf(α)`:
/// the tail rotation when `δ` is absorbed (`δ + α = α`); otherwise
/// necessarily `δ = cf(α)` and `α = cf(α)·m`, and the doubling interleave
/// of the top copy of `cf(α)` realizes the same bound.
pub fn step_extension(alpha: &Ordinal, delta: &Ordinal) -> Result<PieceMap> {
    require_nonzero("step_extension", &[alpha, delta])?;
    if alpha.is_finite() {
        return Err(Error::RequiresInfinite(alpha.to_string()));
    }
    if *delta > alpha.cofinality() {
        return Err(Error::Invalid(format!("{delta} exceeds cf({alpha})")));
    }
    if delta.add(alpha)? == *alpha {
        return tail_rotation(alpha, delta);
    }
    let lambda = alpha.cofinality();
    let (m, rem) = alpha.div_rem(&lambda)?;
    let Some(m) = m.as_nat().filter(|m| *m >= 1 && rem.is_zero() && *delta == lambda) else {
        return Err(Error::Invalid(format!("no step map extends {alpha} by {delta}")));
    };
    let gamma = lambda.mul(&Ordinal::from_nat(m - 1))?;
    doubling_interleave(&gamma, &lambda)
}

/// Injection pieces for `γ → λ` placed at domain offset `dom` with images
/// offset by `cod`. Supports `γ = λ·c + rem` for `c ∈ {1, 2}` with `rem`
/// zero, finite, or a limit below `λ`.
fn injection_pieces(
    gamma: &Ordinal,
    lambda: &Ordinal,
    dom: &Ordinal,
    cod: &Ordinal,
    out: &mut Vec<Piece>,
) -> Result<()> {
    let (q, rem) = gamma.div_rem(lambda)?;
    let at = |x: &Ordinal| dom.add(x);
    match (q.as_nat(), rem.as_nat()) {
        (Some(1), Some(0)) => {
            out.push(Piece {
                lo: dom.clone(),
                hi: at(lambda)?,
                kind: MapKind::Shift { base: cod.clone() },
            });
        }
        (Some(2), Some(0)) => {
            out.push(Piece {
                lo: dom.clone(),
                hi: at(lambda)?,
                kind: MapKind::EvenOddInterleave { base: cod.clone(), odd: false },
            });
            out.push(Piece {
                lo: at(lambda)?,
                hi: at(&lambda.mul(&Ordinal::from_nat(2))?)?,
                kind: MapKind::EvenOddInterleave { base: cod.clone(), odd: true },
            });
        }
        (Some(1), Some(n)) if n > 0 => {
            // Shift the finite block up by n, then send the top n points to
            // the freed-up bottom slots.
            out.push(Piece {
                lo: dom.clone(),
                hi: at(&Ordinal::omega())?,
                kind: MapKind::Shift { base: cod.add(&Ordinal::from_nat(n))? },
            });
            out.push(Piece {
                lo: at(&Ordinal::omega())?,
                hi: at(lambda)?,
                kind: MapKind::Shift { base: cod.add(&Ordinal::omega())? },
            });
            for i in 0..n {
                let lo = at(lambda)?.add(&Ordinal::from_nat(i))?;
                out.push(Piece {
                    lo: lo.clone(),
                    hi: lo.succ()?,
                    kind: MapKind::ConstantTo { point: cod.add(&Ordinal::from_nat(i))? },
                });
            }
        }
        (Some(1), None) if rem.is_limit() => {
            // γ = λ + rem with rem a limit below λ: interleave the copy of
            // rem at the top with the initial copy.
            out.push(Piece {
                lo: dom.clone(),
                hi: at(&rem)?,
                kind: MapKind::EvenOddInterleave { base: cod.clone(), odd: false },
            });
            out.push(Piece {
                lo: at(&rem)?,
                hi: at(lambda)?,
                kind: MapKind::Shift { base: cod.add(&rem)? },
            });
            out.push(Piece {
                lo: at(lambda)?,
                hi: at(&lambda.add(&rem)?)?,
                kind: MapKind::EvenOddInterleave { base: cod.clone(), odd: true },
            });
        }
        _ => {
            return Err(Error::Invalid(format!(
                "no canonical injection of {gamma} into {lambda} is built"
            )));
        }
    }
    Ok(())
}

/// `f : α → λ`, a canonical injection into the cardinal `λ = |α|`;
/// injective. Supported shapes: `α = λ·c + rem`, `c ∈ {1,2}`, `rem` zero,
/// finite, or a limit `< λ`.
pub fn card_injection(alpha: &Ordinal, lambda: &Ordinal) -> Result<PieceMap> {
    require_nonzero("card_injection", &[alpha, lambda])?;
    if alpha.card() != lambda.card() || *lambda > *alpha {
        return Err(Error::Invalid(format!("{lambda} is not the cardinality of {alpha}")));
    }
    let mut pieces = Vec::new();
    injection_pieces(alpha, lambda, &Ordinal::zero(), &Ordinal::zero(), &mut pieces)?;
    PieceMap::new(format!("card_injection({alpha}, {lambda})"), alpha.clone(), lambda.clone(), pieces)
}

/// `f : α+γ → α+λ`, identity on `α` with a canonical injection `γ → λ` on
/// the tail; injective. Requires `cf(α) > λ` and `|γ| = λ`.
pub fn tail_injection(alpha: &Ordinal, lambda: &Ordinal, gamma: &Ordinal) -> Result<PieceMap> {
    require_nonzero("tail_injection", &[alpha, lambda, gamma])?;
    if alpha.cofinality() <= *lambda {
        return Err(Error::Invalid(format!("cf({alpha}) must exceed {lambda}")));
    }
    if gamma.card() != lambda.card() {
        return Err(Error::Invalid(format!("|{gamma}| must equal {lambda}")));
    }
    let mut pieces =
        vec![Piece { lo: Ordinal::zero(), hi: alpha.clone(), kind: MapKind::Identity }];
    injection_pieces(gamma, lambda, alpha, alpha, &mut pieces)?;
    PieceMap::new(
        format!("tail_injection({alpha}, {lambda}, {gamma})"),
        alpha.add(gamma)?,
        alpha.add(lambda)?,
        pieces,
    )
}

/// `f : β+α → α` collapsing the prefix to 0 and shifting the rest down;
/// not injective (union-closed transfer only).
pub fn prefix_collapse(beta: &Ordinal, alpha: &Ordinal) -> Result<PieceMap> {
    require_nonzero("prefix_collapse", &[beta, alpha])?;
    let pieces = vec![
        Piece {
            lo: Ordinal::zero(),
            hi: beta.clone(),
            kind: MapKind::ConstantTo { point: Ordinal::zero() },
        },
        Piece {
            lo: beta.clone(),
            hi: beta.add(alpha)?,
            kind: MapKind::Shift { base: Ordinal::zero() },
        },
    ];
    PieceMap::new(format!("prefix_collapse({beta}, {alpha})"), beta.add(alpha)?, alpha.clone(), pieces)
}

/// `f : β·α → α` sending `β·ζ + η` to `ζ`; not injective (union-closed
/// transfer only). Requires `β ≥ 2`.
pub fn block_collapse(beta: &Ordinal, alpha: &Ordinal) -> Result<PieceMap> {
    require_nonzero("block_collapse", &[beta, alpha])?;
    if *beta < Ordinal::from_nat(2) {
        return Err(Error::Invalid("block size must be at least 2".into()));
    }
    let domain = beta.mul(alpha)?;
    let pieces = vec![Piece {
        lo: Ordinal::zero(),
        hi: domain.clone(),
        kind: MapKind::BlockCollapse { block: beta.clone() },
    }];
    PieceMap::new(format!("block_collapse({beta}, {alpha})"), domain, alpha.clone(), pieces)
}

/// `f : α → cf(α)` sending each point to its rank in the canonical cofinal
/// sequence; not injective. Requires `cf(α)` infinite.
pub fn cofinal_rank(alpha: &Ordinal) -> Result<PieceMap> {
    require_nonzero("cofinal_rank", &[alpha])?;
    let nu = alpha.cofinality();
    if nu < Ordinal::omega() {
        return Err(Error::RequiresInfinite(format!("cf({alpha})")));
    }
    let pieces =
        vec![Piece { lo: Ordinal::zero(), hi: alpha.clone(), kind: MapKind::CofinalCollapse }];
    PieceMap::new(format!("cofinal_rank({alpha})"), alpha.clone(), nu, pieces)
}

/// The full builtin suite instantiated over the standard ordinal grid:
/// each entry is `(map, β, β′)` for [`check_transfer`].
pub fn builtin_suite() -> Result<Vec<(PieceMap, Ordinal, Ordinal)>> {
    let o = |s: &str| Ordinal::parse(s).expect("grid literal");
    let mut suite = Vec::new();
    for a in ["w", "w*2", "w^2", "k", "k+w", "k*2"] {
        let alpha = o(a);
        suite.push((succ_rotation(&alpha)?, alpha.clone(), alpha.succ()?));
    }
    for (g, a) in [
        ("0", "w"),
        ("0", "w^2"),
        ("0", "k"),
        ("1", "w"),
        ("w", "w"),
        ("w", "w*2"),
        ("w^2", "w"),
        ("k", "k"),
        ("k", "w"),
    ] {
        let (gamma, alpha) = (o(g), o(a));
        let beta = gamma.add(&alpha)?;
        let beta_prime = beta.add(&alpha)?;
        suite.push((doubling_interleave(&gamma, &alpha)?, beta, beta_prime));
    }
    for (a, d) in [
        ("w*2", "5"),
        ("w*2", "w"),
        ("w^2", "w"),
        ("k", "w"),
        ("k", "k"),
        ("k+w", "w"),
        ("k*2", "k"),
        ("k^2", "k"),
    ] {
        let (alpha, delta) = (o(a), o(d));
        suite.push((step_extension(&alpha, &delta)?, alpha.clone(), alpha.add(&delta)?));
    }
    for (a, l) in [("w", "w"), ("w*2", "w"), ("w+3", "w"), ("k", "k"), ("k+w", "k"), ("k*2", "k")] {
        let (alpha, lambda) = (o(a), o(l));
        suite.push((card_injection(&alpha, &lambda)?, lambda, alpha));
    }
    for (a, l, g) in [("k", "w", "w*2"), ("k", "w", "w+4"), ("k*2", "w", "w*2"), ("k^2", "w", "w")] {
        let (alpha, lambda, gamma) = (o(a), o(l), o(g));
        suite.push((
            tail_injection(&alpha, &lambda, &gamma)?,
            alpha.add(&lambda)?,
            alpha.add(&gamma)?,
        ));
    }
    for (b, a) in [("w", "w"), ("k", "w"), ("5", "w*2"), ("w", "k"), ("k", "k")] {
        let (beta, alpha) = (o(b), o(a));
        suite.push((prefix_collapse(&beta, &alpha)?, alpha.clone(), beta.add(&alpha)?));
    }
    for (b, a) in [("w", "w"), ("w", "w^2"), ("2", "w*2"), ("k", "k"), ("w", "k")] {
        let (beta, alpha) = (o(b), o(a));
        suite.push((block_collapse(&beta, &alpha)?, alpha.clone(), beta.mul(&alpha)?));
    }
    for a in ["w*2", "w^2", "k", "k+w", "k*2", "k^2"] {
        let alpha = o(a);
        let nu = alpha.cofinality();
        suite.push((cofinal_rank(&alpha)?, nu, alpha));
    }
    Ok(suite)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        Ordinal::parse(s).unwrap()
    }

    fn set(bound: &str, pieces: &[(&str, &str)]) -> IntervalSet {
        IntervalSet::new(o(bound), pieces.iter().map(|(l, h)| (o(l), o(h))).collect()).unwrap()
    }

    #[test]
    fn apply_cases() {
        let f = succ_rotation(&o("w*2")).unwrap();
        assert_eq!(f.apply(&o("w*2")).unwrap(), o("0"));
        assert_eq!(f.apply(&o("3")).unwrap(), o("4"));
        assert_eq!(f.apply(&o("w+1")).unwrap(), o("w+1"));
        assert!(f.apply(&o("w*2+1")).is_err());

        let g = block_collapse(&o("w"), &o("w")).unwrap();
        assert_eq!(g.apply(&o("w*3+5")).unwrap(), o("3"));

        let h = prefix_collapse(&o("w"), &o("w^2")).unwrap();
        assert_eq!(h.apply(&o("2")).unwrap(), o("0"));
        assert_eq!(h.apply(&o("w+2")).unwrap(), o("2"));

        // γ=ω, α=ω·2+1: copies of the limit part ω·2 sit at [ω, ω·3) and
        // [ω·3, ω·5), hitting evens and odds of [ω, ω·3); the final point
        // ω·5 lands on the slot ω·3.
        let i = doubling_interleave(&o("w"), &o("w*2+1")).unwrap();
        assert_eq!(i.apply(&o("3")).unwrap(), o("3"));
        assert_eq!(i.apply(&o("w+5")).unwrap(), o("w+10"));
        assert_eq!(i.apply(&o("w*2+5")).unwrap(), o("w*2+10"));
        assert_eq!(i.apply(&o("w*3+5")).unwrap(), o("w+11"));
        assert_eq!(i.apply(&o("w*4+5")).unwrap(), o("w*2+11"));
        assert_eq!(i.apply(&o("w*5")).unwrap(), o("w*3"));
    }

    #[test]
    fn cofinal_rank_cases() {
        let f = cofinal_rank(&o("w^2")).unwrap();
        assert_eq!(f.codomain(), &o("w"));
        assert_eq!(f.apply(&o("w*3+5")).unwrap(), o("3"));
        assert_eq!(f.apply(&o("0")).unwrap(), o("0"));

        let g = cofinal_rank(&o("k")).unwrap();
        assert_eq!(g.codomain(), &o("k"));
        assert_eq!(g.apply(&o("w^5*2+3")).unwrap(), o("6"));
        assert_eq!(g.apply(&o("w^(w+1)")).unwrap(), o("w+2"));

        let h = cofinal_rank(&o("k*2")).unwrap();
        assert_eq!(h.apply(&o("w^3")).unwrap(), o("0"));
        assert_eq!(h.apply(&o("k+w^3")).unwrap(), o("4"));

        let i = cofinal_rank(&o("k^2")).unwrap();
        assert_eq!(i.apply(&o("k*5+3")).unwrap(), o("1"));
        assert_eq!(i.apply(&o("w^(k+w)")).unwrap(), o("w+1"));

        let j = cofinal_rank(&o("w^w")).unwrap();
        assert_eq!(j.apply(&o("w^3*2")).unwrap(), o("3"));
    }

    #[test]
    fn preimage_cases() {
        let f = succ_rotation(&o("w*2")).unwrap();
        let k = set("w*2", &[("0", "w")]);
        let pre = f.preimage(&k).unwrap();
        assert_eq!(pre, set("w*2+1", &[("0", "w"), ("w*2", "w*2+1")]));
        assert_eq!(f.preimage_order_type(&k).unwrap(), o("w+1"));

        let g = block_collapse(&o("w"), &o("w^2")).unwrap();
        let k = set("w^2", &[("0", "w+2")]);
        assert_eq!(g.preimage_order_type(&k).unwrap(), o("w^2+w*2"));

        let rot = tail_rotation(&o("w^2"), &o("w")).unwrap();
        let k = set("w^2", &[("w", "w+4")]);
        // f(ε) = ω+ε on [0, ω²) puts [ω, ω+4) at domain [0, 4).
        assert_eq!(rot.preimage(&k).unwrap(), set("w^2+w", &[("0", "4")]));
    }

    #[test]
    fn interleave_preimage_is_exact() {
        let f = doubling_interleave(&o("0"), &o("w")).unwrap();
        // Evens below 6 are 0,2,4 (m<3); odds are 1,3,5 (m<3).
        let k = set("w", &[("0", "6")]);
        assert_eq!(f.preimage(&k).unwrap(), set("w*2", &[("0", "3"), ("w", "w+3")]));
        let k = set("w", &[("3", "8")]);
        // Evens 4,6 → m=2,3; odds 3,5,7 → m=1,2,3.
        assert_eq!(f.preimage(&k).unwrap(), set("w*2", &[("2", "4"), ("w+1", "w+4")]));

        let g = doubling_interleave(&o("0"), &o("w^2")).unwrap();
        let k = set("w^2", &[("w*2+1", "w^2")]);
        // Even side: tail of block ω·2 from m=1 plus all later blocks;
        // odd side: whole blocks from ω·2 on, plus odd 2m+1 ≥ 1 of block ω·2.
        assert_eq!(
            g.preimage(&k).unwrap(),
            set("w^2*2", &[("w*2+1", "w^2"), ("w^2+w*2", "w^2*2")])
        );
    }

    #[test]
    fn rank_preimages_match_membership() {
        for a in ["w*2", "w^2", "w^w", "w^(w+1)", "k", "k*2", "k^2", "k+w"] {
            let alpha = o(a);
            let f = cofinal_rank(&alpha).unwrap();
            let nu = f.codomain().clone();
            // Probe points: CNF partial sums of α and small perturbations.
            let mut probes = vec![o("0"), o("1"), o("5"), o("w"), o("w+3"), o("w^2")];
            let mut acc = Ordinal::zero();
            for (e, c) in alpha.terms() {
                for take in [1, *c] {
                    let p = acc.add(&Ordinal::single(e.clone(), take)).unwrap();
                    probes.push(p.succ().unwrap());
                    probes.push(p);
                }
                acc = acc.add(&Ordinal::single(e.clone(), *c)).unwrap();
            }
            probes.retain(|p| *p < alpha);
            for x in ["1", "2", "3", "w", "w+1"] {
                let x = o(x);
                if x >= nu {
                    continue;
                }
                let k = IntervalSet::new(nu.clone(), vec![(Ordinal::zero(), x.clone())]).unwrap();
                let pre = f.preimage(&k).unwrap();
                for p in &probes {
                    let member = rank_in(&alpha, p).unwrap() < x;
                    assert_eq!(
                        pre.contains_point(p),
                        member,
                        "alpha={alpha} x={x} p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn injectivity_flags() {
        assert!(succ_rotation(&o("w*2")).unwrap().is_injective());
        assert!(doubling_interleave(&o("k"), &o("k")).unwrap().is_injective());
        assert!(tail_rotation(&o("k"), &o("w")).unwrap().is_injective());
        assert!(step_extension(&o("w*2"), &o("w")).unwrap().is_injective());
        assert!(card_injection(&o("k*2"), &o("k")).unwrap().is_injective());
        assert!(card_injection(&o("w+3"), &o("w")).unwrap().is_injective());
        assert!(tail_injection(&o("k"), &o("w"), &o("w*2")).unwrap().is_injective());
        assert!(!prefix_collapse(&o("w"), &o("w")).unwrap().is_injective());
        assert!(!block_collapse(&o("w"), &o("w")).unwrap().is_injective());
        assert!(!cofinal_rank(&o("k")).unwrap().is_injective());
    }

    #[test]
    fn builder_guards() {
        assert!(succ_rotation(&o("7")).is_err());
        assert!(tail_rotation(&o("k"), &o("k")).is_err(), "k+k is not absorbed");
        assert!(tail_rotation(&o("k+w"), &o("w*2")).is_err(), "w*2 exceeds cf");
        assert!(step_extension(&o("w^2"), &o("w*2")).is_err(), "w*2 exceeds cf");
        assert!(card_injection(&o("k"), &o("w")).is_err(), "cardinality mismatch");
        assert!(tail_injection(&o("w*2"), &o("w"), &o("w")).is_err(), "cf not above lambda");
        assert!(block_collapse(&o("1"), &o("w")).is_err());
        assert!(cofinal_rank(&o("w+1")).is_err());
    }

    #[test]
    fn broken_map_fails_check() {
        let all_zero = PieceMap::new(
            "constant_to_zero",
            o("w"),
            o("w"),
            vec![Piece {
                lo: o("0"),
                hi: o("w"),
                kind: MapKind::ConstantTo { point: o("0") },
            }],
        )
        .unwrap();
        assert!(!all_zero.is_injective());
        let samples = sample_family(&all_zero, 40, 7);
        match check_transfer(&all_zero, &o("w"), &o("1"), &samples).unwrap() {
            TransferOutcome::Fail { k, preimage_ot } => {
                assert!(k.contains_point(&o("0")));
                assert_eq!(preimage_ot, o("w"));
            }
            TransferOutcome::Pass { .. } => panic!("broken map must fail"),
        }
    }

    #[test]
    fn builtin_maps_pass_their_checks() {
        let f = succ_rotation(&o("w*2")).unwrap();
        let samples = sample_family(&f, 60, 11);
        assert!(matches!(
            check_transfer(&f, &o("w*2"), &o("w*2"), &samples).unwrap(),
            TransferOutcome::Pass { .. }
        ));
        // Extending ω·2 by ω is the non-absorbed case: the step map is the
        // doubling interleave with γ = ω, still bounding preimages by ω·3.
        let g = step_extension(&o("w*2"), &o("w")).unwrap();
        assert_eq!(g.domain(), &o("w*3"));
        assert_eq!(g.codomain(), &o("w*2"));
        let samples = sample_family(&g, 60, 12);
        assert!(matches!(
            check_transfer(&g, &o("w*2"), &o("w*3"), &samples).unwrap(),
            TransferOutcome::Pass { .. }
        ));
        let h = tail_rotation(&o("w^2"), &o("w")).unwrap();
        let samples = sample_family(&h, 60, 13);
        assert!(matches!(
            check_transfer(&h, &o("w^2"), &o("w^2+w"), &samples).unwrap(),
            TransferOutcome::Pass { .. }
        ));
    }
}
