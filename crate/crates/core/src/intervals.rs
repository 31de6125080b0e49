//! Finite unions of half-open ordinal intervals with exact order types.
//!
//! An [`IntervalSet`] lives inside an ambient `[0, bound)` and stores
//! disjoint, ascending, non-adjacent pieces `[lo, hi)`. The order type of
//! such a set is the ordinal sum of the piece lengths in ascending order,
//! which is exact for interval sets (no general suborder machinery is
//! needed). This module also turns shifted-sum block certificates into
//! concrete witness pairs `(I, J)` and provides deterministic subset
//! sampling for property tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::sums::{delta, k_decomposition, shifted_sum_certificate, sigma, SigmaString};
use crate::{Error, Ordinal, Result};

/// A finite union of half-open intervals `[lo, hi)` below `bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalSet {
    bound: Ordinal,
    pieces: Vec<(Ordinal, Ordinal)>,
}

impl IntervalSet {
    pub fn empty(bound: Ordinal) -> Self {
        IntervalSet { bound, pieces: Vec::new() }
    }

    /// The whole ambient interval `[0, bound)`.
    pub fn full(bound: Ordinal) -> Self {
        if bound.is_zero() {
            IntervalSet::empty(bound)
        } else {
            IntervalSet { pieces: vec![(Ordinal::zero(), bound.clone())], bound }
        }
    }

    /// Builds a set from arbitrary intervals (union semantics): empty pieces
    /// are dropped, overlapping or adjacent pieces merge. Errors when a
    /// piece is inverted or sticks out of `[0, bound)`.
    pub fn new(bound: Ordinal, pieces: Vec<(Ordinal, Ordinal)>) -> Result<Self> {
        let mut sorted: Vec<(Ordinal, Ordinal)> = Vec::with_capacity(pieces.len());
        for (lo, hi) in pieces {
            if lo > hi {
                return Err(Error::MalformedInterval { lo: lo.to_string(), hi: hi.to_string() });
            }
            if hi > bound {
                return Err(Error::OutOfRange {
                    what: format!("[{lo}, {hi})"),
                    ambient: format!("[0, {bound})"),
                });
            }
            if lo < hi {
                sorted.push((lo, hi));
            }
        }
        sorted.sort();
        let mut merged: Vec<(Ordinal, Ordinal)> = Vec::with_capacity(sorted.len());
        for (lo, hi) in sorted {
            match merged.last_mut() {
                Some((_, mhi)) if lo <= *mhi => {
                    if hi > *mhi {
                        *mhi = hi;
                    }
                }
                _ => merged.push((lo, hi)),
            }
        }
        Ok(IntervalSet { bound, pieces: merged })
    }

    pub fn bound(&self) -> &Ordinal {
        &self.bound
    }

    /// Normalized pieces, ascending and non-adjacent.
    pub fn pieces(&self) -> &[(Ordinal, Ordinal)] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains_point(&self, x: &Ordinal) -> bool {
        self.pieces.iter().any(|(lo, hi)| lo <= x && x < hi)
    }

    /// Order type of the set as a suborder of the ordinals: the ordinal sum
    /// of the piece lengths in ascending order.
    pub fn order_type(&self) -> Ordinal {
        let mut acc = Ordinal::zero();
        for (lo, hi) in &self.pieces {
            let len = lo.left_sub(hi).expect("piece is ordered");
            acc = acc.add(&len).expect("order type coefficients overflow");
        }
        acc
    }

    fn check_bound(&self, other: &IntervalSet) -> Result<()> {
        if self.bound != other.bound {
            return Err(Error::BoundMismatch(self.bound.to_string(), other.bound.to_string()));
        }
        Ok(())
    }

    pub fn union(&self, other: &IntervalSet) -> Result<IntervalSet> {
        self.check_bound(other)?;
        let mut pieces = self.pieces.clone();
        pieces.extend(other.pieces.iter().cloned());
        IntervalSet::new(self.bound.clone(), pieces)
    }

    pub fn intersect(&self, other: &IntervalSet) -> Result<IntervalSet> {
        self.check_bound(other)?;
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.pieces.len() && j < other.pieces.len() {
            let (alo, ahi) = &self.pieces[i];
            let (blo, bhi) = &other.pieces[j];
            let lo = std::cmp::max(alo, blo);
            let hi = std::cmp::min(ahi, bhi);
            if lo < hi {
                out.push((lo.clone(), hi.clone()));
            }
            if ahi <= bhi {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalSet::new(self.bound.clone(), out)
    }

    /// Complement within the ambient `[0, bound)`.
    pub fn complement(&self) -> IntervalSet {
        let mut out = Vec::new();
        let mut cursor = Ordinal::zero();
        for (lo, hi) in &self.pieces {
            if cursor < *lo {
                out.push((cursor.clone(), lo.clone()));
            }
            cursor = hi.clone();
        }
        if cursor < self.bound {
            out.push((cursor, self.bound.clone()));
        }
        IntervalSet { bound: self.bound.clone(), pieces: out }
    }

    /// `n` pseudo-random interval subsets of `self`, deterministic per
    /// `seed`; the first two are always `self` itself and the empty set.
    pub fn sample_subsets(&self, n: usize, seed: u64) -> Vec<IntervalSet> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(n);
        if n >= 1 {
            out.push(self.clone());
        }
        if n >= 2 {
            out.push(IntervalSet::empty(self.bound.clone()));
        }
        while out.len() < n {
            let mut pieces = Vec::new();
            for (lo, hi) in &self.pieces {
                match rng.gen_range(0..4u8) {
                    0 => {}
                    1 => pieces.push((lo.clone(), hi.clone())),
                    _ => {
                        let len = lo.left_sub(hi).expect("piece is ordered");
                        let r1 = random_at_most(&mut rng, &len);
                        let r2 = random_at_most(&mut rng, &len);
                        let (d1, d2) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
                        if d1 < d2 {
                            let sub_lo = lo.add(&d1).expect("offset fits");
                            let sub_hi = lo.add(&d2).expect("offset fits");
                            pieces.push((sub_lo, sub_hi));
                        }
                    }
                }
            }
            out.push(IntervalSet::new(self.bound.clone(), pieces).expect("subset of valid set"));
        }
        out
    }
}

impl serde::Serialize for IntervalSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("IntervalSet", 2)?;
        st.serialize_field("bound", &self.bound)?;
        let pieces: Vec<[&Ordinal; 2]> = self.pieces.iter().map(|(lo, hi)| [lo, hi]).collect();
        st.serialize_field("pieces", &pieces)?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for IntervalSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            bound: Ordinal,
            pieces: Vec<(Ordinal, Ordinal)>,
        }
        let raw = Raw::deserialize(d)?;
        IntervalSet::new(raw.bound, raw.pieces).map_err(serde::de::Error::custom)
    }
}

/// Uniform-ish random ordinal `≤ x`: truncates the CNF at a random term
/// with a random smaller coefficient.
pub(crate) fn random_at_most(rng: &mut ChaCha8Rng, x: &Ordinal) -> Ordinal {
    if x.is_zero() || rng.gen_bool(0.2) {
        return x.clone();
    }
    let terms = x.terms();
    let cut = rng.gen_range(0..terms.len());
    let mut kept = terms[..cut].to_vec();
    let (e, c) = &terms[cut];
    let keep_coeff = rng.gen_range(0..=*c);
    if keep_coeff > 0 {
        kept.push((e.clone(), keep_coeff));
    }
    Ordinal::from_terms_unchecked(kept)
}

/// Concrete witness `(I, J)` that `g` is a shifted sum of `a` and `b`:
/// `I ∪ J = [0, g)` up to order type, `order_type(I) = a`,
/// `order_type(J) = b`, and both sets are unions of initial segments of the
/// canonical intervals of `k_decomposition(g)`.
pub fn realize_shifted_sum(
    g: &Ordinal,
    a: &Ordinal,
    b: &Ordinal,
) -> Result<(IntervalSet, IntervalSet)> {
    let cert = shifted_sum_certificate(g, a, b)?.ok_or_else(|| Error::NotAShiftedSum {
        g: g.to_string(),
        a: a.to_string(),
        b: b.to_string(),
    })?;
    let ks = k_decomposition(g)?;
    let sa = sigma(a)?;
    let sb = sigma(b)?;
    let mut i_pieces = Vec::new();
    let mut j_pieces = Vec::new();
    for (pos, (lo, hi)) in cert.positions.iter().zip(&ks) {
        push_block(&mut i_pieces, lo, hi, pos.a_exact, &sa.items()[pos.a_range.clone()])?;
        push_block(&mut j_pieces, lo, hi, pos.b_exact, &sb.items()[pos.b_range.clone()])?;
    }
    Ok((IntervalSet::new(g.clone(), i_pieces)?, IntervalSet::new(g.clone(), j_pieces)?))
}

/// The initial segment of `[lo, hi)` taken by one side at one certificate
/// position: the whole interval for an exact block, else a prefix of length
/// `δ(run items)`.
fn push_block(
    pieces: &mut Vec<(Ordinal, Ordinal)>,
    lo: &Ordinal,
    hi: &Ordinal,
    exact: bool,
    items: &[crate::Exponent],
) -> Result<()> {
    if exact {
        pieces.push((lo.clone(), hi.clone()));
    } else if !items.is_empty() {
        let v = delta(&SigmaString::from_items(items.to_vec()));
        pieces.push((lo.clone(), lo.add(&v)?));
    }
    Ok(())
}
