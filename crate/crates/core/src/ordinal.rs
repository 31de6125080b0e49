//! Two-tier Cantor normal form ordinals.
//!
//! An [`Ordinal`] is a strictly decreasing sum `Σ ω^{E_i}·c_i` with positive
//! integer coefficients. Each exponent [`Exponent`] denotes the value
//! `κ⁺·kp + κ·ke + tail`, where `kp` is a natural number and `ke`, `tail` are
//! *pure* ordinals (no κ/κ⁺ tiers). Since κ and κ⁺ are regular uncountable
//! cardinals they are additively indecomposable ε-fixed-points, so `κ = ω^κ`
//! and `κ⁺ = ω^{κ⁺}`; every value handled here normalizes into this shape.
//!
//! The derived lexicographic order on term lists (longer list wins when one
//! is a prefix of the other) coincides with the ordinal order, so `Ord` is
//! derived structurally.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Cardinality classes relevant to the toolkit, totally ordered:
/// `Finite(n) < Aleph0 < Kappa < KappaPlus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CardClass {
    Finite(u64),
    Aleph0,
    Kappa,
    KappaPlus,
}

impl CardClass {
    /// True for ℵ₀, κ and κ⁺.
    pub fn is_infinite(self) -> bool {
        !matches!(self, CardClass::Finite(_))
    }
}

impl fmt::Display for CardClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardClass::Finite(n) => write!(f, "{n}"),
            CardClass::Aleph0 => write!(f, "w"),
            CardClass::Kappa => write!(f, "k"),
            CardClass::KappaPlus => write!(f, "k+"),
        }
    }
}

impl serde::Serialize for CardClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CardClass::Finite(n) => s.serialize_u64(*n),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> serde::Deserialize<'de> for CardClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = CardClass;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a natural number, \"w\", \"k\" or \"k+\"")
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<CardClass, E> {
                Ok(CardClass::Finite(v))
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> std::result::Result<CardClass, E> {
                u64::try_from(v)
                    .map(CardClass::Finite)
                    .map_err(|_| E::custom("negative cardinality"))
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<CardClass, E> {
                match v {
                    "w" => Ok(CardClass::Aleph0),
                    "k" => Ok(CardClass::Kappa),
                    "k+" => Ok(CardClass::KappaPlus),
                    other => other
                        .parse::<u64>()
                        .map(CardClass::Finite)
                        .map_err(|_| E::custom(format!("unknown cardinality {other:?}"))),
                }
            }
        }
        d.deserialize_any(V)
    }
}

/// Exponent of a CNF term; denotes the ordinal `κ⁺·kp + κ·ke + tail`.
///
/// `ke` and `tail` are always pure ordinals. The derived lexicographic order
/// on `(kp, ke, tail)` equals the order of the denoted values.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent {
    kp: u64,
    ke: Ordinal,
    tail: Ordinal,
}

impl Exponent {
    /// The zero exponent (`ω^0 = 1` terms).
    pub fn zero() -> Self {
        Exponent { kp: 0, ke: Ordinal::zero(), tail: Ordinal::zero() }
    }

    /// Exponent with the pure value `tail`.
    pub fn pure(tail: Ordinal) -> Result<Self> {
        Exponent::new(0, Ordinal::zero(), tail)
    }

    /// Builds `κ⁺·kp + κ·ke + tail`; `ke` and `tail` must be pure.
    ///
    /// The only admissible κ⁺-tier exponent is the bare κ⁺ unit: the
    /// arithmetic never produces `ω^{κ⁺·2}` or `ω^{κ⁺+x}` (such products
    /// are rejected), so those shapes cannot be constructed either.
    pub fn new(kp: u64, ke: Ordinal, tail: Ordinal) -> Result<Self> {
        if !ke.is_pure() || !tail.is_pure() {
            return Err(Error::InvalidTerms("exponent parts must be pure ordinals".into()));
        }
        if kp > 1 || (kp == 1 && !(ke.is_zero() && tail.is_zero())) {
            return Err(Error::InvalidTerms(
                "the k+ tier can only appear as the bare k+ exponent".into(),
            ));
        }
        Ok(Exponent { kp, ke, tail })
    }

    pub fn kp(&self) -> u64 {
        self.kp
    }

    pub fn ke(&self) -> &Ordinal {
        &self.ke
    }

    pub fn tail(&self) -> &Ordinal {
        &self.tail
    }

    pub fn is_zero(&self) -> bool {
        self.kp == 0 && self.ke.is_zero() && self.tail.is_zero()
    }

    /// True when the exponent denotes a pure value (no κ/κ⁺ part).
    pub fn is_pure(&self) -> bool {
        self.kp == 0 && self.ke.is_zero()
    }

    /// The denoted value as an [`Ordinal`].
    pub fn to_ordinal(&self) -> Ordinal {
        let mut terms = Vec::new();
        if self.kp > 0 {
            terms.push((KAPPA_PLUS_EXP, self.kp));
        }
        // κ·ke: each pure term ω^t·c of ke contributes ω^{κ+t}·c.
        for (e, c) in &self.ke.terms {
            let t = e.tail.clone();
            terms.push((Exponent { kp: 0, ke: Ordinal::one(), tail: t }, *c));
        }
        terms.extend(self.tail.terms.iter().cloned());
        Ordinal { terms }
    }

    /// Value-level sum `self + other` of the denoted ordinals, re-encoded as
    /// an exponent. Total up to coefficient overflow.
    pub fn value_add(&self, other: &Exponent) -> Result<Exponent> {
        if other.kp > 0 {
            let kp = self.kp.checked_add(other.kp).ok_or(Error::CoefficientOverflow)?;
            Ok(Exponent { kp, ke: other.ke.clone(), tail: other.tail.clone() })
        } else if !other.ke.is_zero() {
            Ok(Exponent {
                kp: self.kp,
                ke: self.ke.add(&other.ke)?,
                tail: other.tail.clone(),
            })
        } else if !other.tail.is_zero() {
            Ok(Exponent {
                kp: self.kp,
                ke: self.ke.clone(),
                tail: self.tail.add(&other.tail)?,
            })
        } else {
            Ok(self.clone())
        }
    }

    /// Value-level left subtraction: the unique `x` with `self + x = target`
    /// (requires `self ≤ target`).
    pub fn value_left_sub(&self, target: &Exponent) -> Result<Exponent> {
        let underflow = || Error::LeftSubUnderflow {
            minuend: self.to_ordinal().to_string(),
            target: target.to_ordinal().to_string(),
        };
        match self.kp.cmp(&target.kp) {
            Ordering::Greater => Err(underflow()),
            Ordering::Less => Ok(Exponent {
                kp: target.kp - self.kp,
                ke: target.ke.clone(),
                tail: target.tail.clone(),
            }),
            Ordering::Equal => match self.ke.cmp(&target.ke) {
                Ordering::Greater => Err(underflow()),
                Ordering::Less => Ok(Exponent {
                    kp: 0,
                    ke: self.ke.left_sub(&target.ke)?,
                    tail: target.tail.clone(),
                }),
                Ordering::Equal => Ok(Exponent {
                    kp: 0,
                    ke: Ordinal::zero(),
                    tail: self.tail.left_sub(&target.tail).map_err(|_| underflow())?,
                }),
            },
        }
    }

    /// True when the denoted value is a successor ordinal.
    pub fn is_successor_value(&self) -> bool {
        self.tail.is_successor()
    }

    /// Cardinality of `ω^self` (for nonzero `self`): κ⁺ when a κ⁺ part is
    /// present, κ when a κ part is present, ℵ₀ otherwise. For the zero
    /// exponent the term value is finite.
    pub(crate) fn term_card(&self) -> CardClass {
        if self.kp > 0 {
            CardClass::KappaPlus
        } else if !self.ke.is_zero() {
            CardClass::Kappa
        } else if !self.tail.is_zero() {
            CardClass::Aleph0
        } else {
            CardClass::Finite(1)
        }
    }
}

const KAPPA_PLUS_EXP: Exponent =
    Exponent { kp: 1, ke: Ordinal { terms: Vec::new() }, tail: Ordinal { terms: Vec::new() } };

/// Classification of an ordinal as zero, successor or limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrdinalKind {
    Zero,
    Successor,
    Limit,
}

/// Decomposition `a = limit_part + nat_tail` plus the kind of `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    pub kind: OrdinalKind,
    /// Largest limit ordinal (or 0) such that `a = limit_part + nat_tail`.
    pub limit_part: Ordinal,
    /// Finite tail of `a` (coefficient of the `ω^0` term).
    pub nat_tail: u64,
}

impl Structure {
    pub fn is_zero(&self) -> bool {
        self.kind == OrdinalKind::Zero
    }
    pub fn is_successor(&self) -> bool {
        self.kind == OrdinalKind::Successor
    }
    pub fn is_limit(&self) -> bool {
        self.kind == OrdinalKind::Limit
    }
}

/// An ordinal in two-tier Cantor normal form.
///
/// The empty term list denotes 0. Construction through the public API keeps
/// the normal-form invariants: exponents strictly decreasing, coefficients
/// ≥ 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ordinal {
    pub(crate) terms: Vec<(Exponent, u64)>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::from_nat(1)
    }

    pub fn from_nat(n: u64) -> Self {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal { terms: vec![(Exponent::zero(), n)] }
        }
    }

    /// ω = `ω^1`.
    pub fn omega() -> Self {
        let one_exp = Exponent { kp: 0, ke: Ordinal::zero(), tail: Ordinal::one() };
        Ordinal { terms: vec![(one_exp, 1)] }
    }

    /// κ = `ω^κ`, encoded with exponent `κ·1`.
    pub fn kappa() -> Self {
        let e = Exponent { kp: 0, ke: Ordinal::one(), tail: Ordinal::zero() };
        Ordinal { terms: vec![(e, 1)] }
    }

    /// κ⁺ = `ω^{κ⁺}`, encoded with exponent `κ⁺·1`.
    pub fn kappa_plus() -> Self {
        Ordinal { terms: vec![(KAPPA_PLUS_EXP, 1)] }
    }

    /// `ω^exp · coeff`; zero coefficient yields 0.
    pub fn single(exp: Exponent, coeff: u64) -> Self {
        if coeff == 0 {
            Ordinal::zero()
        } else {
            Ordinal { terms: vec![(exp, coeff)] }
        }
    }

    /// Builds an ordinal from an explicit term list, validating normal form.
    pub fn from_terms(terms: Vec<(Exponent, u64)>) -> Result<Self> {
        for w in terms.windows(2) {
            if w[0].0 <= w[1].0 {
                return Err(Error::InvalidTerms("exponents not strictly decreasing".into()));
            }
        }
        if terms.iter().any(|(_, c)| *c == 0) {
            return Err(Error::InvalidTerms("zero coefficient".into()));
        }
        Ok(Ordinal { terms })
    }

    pub(crate) fn from_terms_unchecked(terms: Vec<(Exponent, u64)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| *c > 0));
        Ordinal { terms }
    }

    /// CNF terms, highest exponent first.
    pub fn terms(&self) -> &[(Exponent, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(n)` when the value is the natural number `n`.
    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_nat().is_some()
    }

    /// True when no κ/κ⁺ tier occurs anywhere (value below ε₀).
    pub fn is_pure(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.is_pure())
    }

    /// Leading term, if any.
    pub fn lead(&self) -> Option<&(Exponent, u64)> {
        self.terms.first()
    }

    /// Ordinal sum `self + other`.
    pub fn add(&self, other: &Ordinal) -> Result<Ordinal> {
        let Some((f, d)) = other.terms.first() else {
            return Ok(self.clone());
        };
        let mut out: Vec<(Exponent, u64)> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut it = self.terms.iter();
        let mut merged = false;
        for (e, c) in it.by_ref() {
            match e.cmp(f) {
                Ordering::Greater => out.push((e.clone(), *c)),
                Ordering::Equal => {
                    let sum = c.checked_add(*d).ok_or(Error::CoefficientOverflow)?;
                    out.push((f.clone(), sum));
                    merged = true;
                    break;
                }
                Ordering::Less => break,
            }
        }
        if !merged {
            out.push((f.clone(), *d));
        }
        out.extend(other.terms[1..].iter().cloned());
        Ok(Ordinal { terms: out })
    }

    /// Left subtraction: the unique `x` with `self + x = target`.
    /// Errors when `self > target`.
    pub fn left_sub(&self, target: &Ordinal) -> Result<Ordinal> {
        let underflow = || Error::LeftSubUnderflow {
            minuend: self.to_string(),
            target: target.to_string(),
        };
        let mut i = 0;
        loop {
            match (self.terms.get(i), target.terms.get(i)) {
                (None, _) => return Ok(Ordinal { terms: target.terms[i..].to_vec() }),
                (Some(_), None) => return Err(underflow()),
                (Some((ea, ca)), Some((eg, cg))) => match (ea.cmp(eg), ca.cmp(cg)) {
                    (Ordering::Equal, Ordering::Equal) => i += 1,
                    (Ordering::Less, _) => {
                        return Ok(Ordinal { terms: target.terms[i..].to_vec() })
                    }
                    (Ordering::Equal, Ordering::Less) => {
                        let mut terms = vec![(eg.clone(), cg - ca)];
                        terms.extend(target.terms[i + 1..].iter().cloned());
                        return Ok(Ordinal { terms });
                    }
                    _ => return Err(underflow()),
                },
            }
        }
    }

    /// Ordinal product `self · other`.
    ///
    /// κ⁺-tier exponents may only be *absorbed* from the right factor
    /// (`ω·κ⁺ = κ⁺`) or scaled by a natural coefficient; any product that
    /// would create a new κ⁺-tier exponent is rejected.
    pub fn mul(&self, other: &Ordinal) -> Result<Ordinal> {
        if self.is_zero() || other.is_zero() {
            return Ok(Ordinal::zero());
        }
        let (e1, c1) = &self.terms[0];
        let mut acc = Ordinal::zero();
        for (f, d) in &other.terms {
            let part = if f.is_zero() {
                // Finite right factor: scale the leading coefficient.
                let mut terms = self.terms.clone();
                terms[0].1 = c1.checked_mul(*d).ok_or(Error::CoefficientOverflow)?;
                Ordinal { terms }
            } else {
                let g = e1.value_add(f)?;
                if g.kp > 0 && g != *f {
                    return Err(Error::ProductOutsideFragment);
                }
                Ordinal::single(g, *d)
            };
            acc = acc.add(&part)?;
        }
        Ok(acc)
    }

    /// Ordinal power `self ^ other` on the supported fragment: any base with
    /// a natural-number exponent, base ω with any exponent, base κ with a
    /// pure exponent (`κ^ε = ω^{κ·ε}`).
    pub fn pow(&self, other: &Ordinal) -> Result<Ordinal> {
        if other.is_zero() {
            return Ok(Ordinal::one());
        }
        if self.is_zero() {
            return Ok(Ordinal::zero());
        }
        if self.as_nat() == Some(1) {
            return Ok(Ordinal::one());
        }
        if let Some(n) = other.as_nat() {
            if let Some(m) = self.as_nat() {
                let n32 = u32::try_from(n).map_err(|_| Error::CoefficientOverflow)?;
                let v = m.checked_pow(n32).ok_or(Error::CoefficientOverflow)?;
                return Ok(Ordinal::from_nat(v));
            }
            // Binary exponentiation; ordinal multiplication is associative.
            let mut base = self.clone();
            let mut exp = n;
            let mut acc = Ordinal::one();
            while exp > 0 {
                if exp & 1 == 1 {
                    acc = acc.mul(&base)?;
                }
                exp >>= 1;
                if exp > 0 {
                    base = base.mul(&base)?;
                }
            }
            return Ok(acc);
        }
        if *self == Ordinal::omega() {
            return Ok(Ordinal::single(other.to_exponent()?, 1));
        }
        if *self == Ordinal::kappa() && other.is_pure() {
            // κ^ε = ω^{κ·ε}
            let e = Exponent { kp: 0, ke: other.clone(), tail: Ordinal::zero() };
            return Ok(Ordinal::single(e, 1));
        }
        Err(Error::PowerOutsideFragment(format!("{self} ^ {other}")))
    }

    /// Re-encodes the value as a single [`Exponent`] (used for `ω^self`).
    ///
    /// κ⁺ itself maps to the κ⁺-unit exponent; κ-scale terms `ω^{κ+t}·c`
    /// contribute `ω^t·c` to the `ke` part; pure terms form the tail. Any
    /// other κ⁺/κ shape is outside the fragment.
    pub fn to_exponent(&self) -> Result<Exponent> {
        if *self == Ordinal::kappa_plus() {
            return Ok(KAPPA_PLUS_EXP);
        }
        let mut ke_terms: Vec<(Exponent, u64)> = Vec::new();
        let mut tail_terms: Vec<(Exponent, u64)> = Vec::new();
        for (e, c) in &self.terms {
            if e.kp > 0 {
                return Err(Error::PowerOutsideFragment(format!(
                    "exponent {self} mixes the k+ tier with other terms"
                )));
            }
            match e.ke.as_nat() {
                Some(0) => tail_terms.push((e.clone(), *c)),
                Some(1) => {
                    let t = Exponent::pure(e.tail.clone()).expect("pure tail");
                    ke_terms.push((t, *c));
                }
                _ => {
                    return Err(Error::PowerOutsideFragment(format!(
                        "exponent {self} contains a k-power above k itself"
                    )))
                }
            }
        }
        Ok(Exponent {
            kp: 0,
            ke: Ordinal::from_terms_unchecked(ke_terms),
            tail: Ordinal::from_terms_unchecked(tail_terms),
        })
    }

    /// Hessenberg natural sum: multiset merge of the CNF terms.
    pub fn natural_sum(&self, other: &Ordinal) -> Result<Ordinal> {
        let mut out: Vec<(Exponent, u64)> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            match (self.terms.get(i), other.terms.get(j)) {
                (Some((ea, ca)), Some((eb, cb))) => match ea.cmp(eb) {
                    Ordering::Greater => {
                        out.push((ea.clone(), *ca));
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push((eb.clone(), *cb));
                        j += 1;
                    }
                    Ordering::Equal => {
                        let c = ca.checked_add(*cb).ok_or(Error::CoefficientOverflow)?;
                        out.push((ea.clone(), c));
                        i += 1;
                        j += 1;
                    }
                },
                (Some((ea, ca)), None) => {
                    out.push((ea.clone(), *ca));
                    i += 1;
                }
                (None, Some((eb, cb))) => {
                    out.push((eb.clone(), *cb));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Ok(Ordinal { terms: out })
    }

    /// Long division: the unique `(q, r)` with `self = divisor·q + r`,
    /// `r < divisor`.
    pub fn div_rem(&self, divisor: &Ordinal) -> Result<(Ordinal, Ordinal)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (f1, d1) = &divisor.terms[0];
        let mut q = Ordinal::zero();
        let mut r = self.clone();
        loop {
            if r < *divisor {
                return Ok((q, r));
            }
            let (er, cr) = r.terms[0].clone();
            let x = f1.value_left_sub(&er)?;
            if x.is_zero() {
                // Equal leading exponents: largest natural multiplier.
                let mut qn = cr / d1;
                let mut prod = divisor.mul(&Ordinal::from_nat(qn))?;
                if prod > r {
                    qn -= 1;
                    prod = divisor.mul(&Ordinal::from_nat(qn))?;
                }
                let rem = prod.left_sub(&r)?;
                let q2 = q.add(&Ordinal::from_nat(qn))?;
                debug_assert!(rem < *divisor);
                return Ok((q2, rem));
            }
            // divisor · ω^x·cr strips the leading term of r exactly.
            let qt = Ordinal::single(x, cr);
            q = q.add(&qt)?;
            r = Ordinal::single(er, cr).left_sub(&r)?;
        }
    }

    /// Successor `self + 1`.
    pub fn succ(&self) -> Result<Ordinal> {
        self.add(&Ordinal::one())
    }

    /// Predecessor of a successor ordinal.
    pub fn pred(&self) -> Result<Ordinal> {
        if !self.is_successor() {
            return Err(Error::NotASuccessor(self.to_string()));
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().expect("successor is nonzero");
        if last.1 > 1 {
            last.1 -= 1;
        } else {
            terms.pop();
        }
        Ok(Ordinal { terms })
    }

    /// Finite tail: the coefficient of the `ω^0` term.
    pub fn nat_tail(&self) -> u64 {
        match self.terms.last() {
            Some((e, c)) if e.is_zero() => *c,
            _ => 0,
        }
    }

    pub fn is_successor(&self) -> bool {
        self.nat_tail() > 0
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && self.nat_tail() == 0
    }

    pub fn kind(&self) -> OrdinalKind {
        if self.is_zero() {
            OrdinalKind::Zero
        } else if self.is_successor() {
            OrdinalKind::Successor
        } else {
            OrdinalKind::Limit
        }
    }

    /// `self` with the finite tail removed (0 for finite values).
    pub fn limit_part(&self) -> Ordinal {
        let mut terms = self.terms.clone();
        if matches!(terms.last(), Some((e, _)) if e.is_zero()) {
            terms.pop();
        }
        Ordinal { terms }
    }

    /// Largest limit ordinal ≤ `self`; defined for infinite values only.
    pub fn limit_floor(&self) -> Result<Ordinal> {
        if self.is_finite() {
            return Err(Error::RequiresInfinite(self.to_string()));
        }
        Ok(self.limit_part())
    }

    /// Full structural decomposition.
    pub fn structure(&self) -> Structure {
        Structure {
            kind: self.kind(),
            limit_part: self.limit_part(),
            nat_tail: self.nat_tail(),
        }
    }

    /// Cofinality: 0 for 0, 1 for successors, and for limits the cofinality
    /// of the last CNF term `ω^e` (ω when `e` is a successor value, else
    /// recursively the cofinality of `e`; κ-multiples yield κ, κ⁺-multiples
    /// yield κ⁺).
    pub fn cofinality(&self) -> Ordinal {
        if self.is_zero() {
            return Ordinal::zero();
        }
        if self.is_successor() {
            return Ordinal::one();
        }
        let (e, _) = self.terms.last().expect("limit is nonzero");
        Self::cof_of_power(e)
    }

    fn cof_of_power(e: &Exponent) -> Ordinal {
        debug_assert!(!e.is_zero());
        if e.tail.is_successor() {
            return Ordinal::omega();
        }
        if !e.tail.is_zero() {
            return e.tail.cofinality();
        }
        if !e.ke.is_zero() {
            if e.ke.is_successor() {
                return Ordinal::kappa();
            }
            return e.ke.cofinality();
        }
        Ordinal::kappa_plus()
    }

    /// Cardinality class of the value.
    pub fn card(&self) -> CardClass {
        let mut max = CardClass::Finite(self.as_nat().unwrap_or(0));
        for (e, _) in &self.terms {
            let c = e.term_card();
            let c = match c {
                CardClass::Finite(_) => continue,
                infinite => infinite,
            };
            if c > max {
                max = c;
            }
        }
        max
    }

    /// True when `self = κ·ζ` for some ordinal `ζ` (no pure-exponent term).
    pub fn is_multiple_of_kappa(&self) -> bool {
        !self.is_zero() && self.terms.iter().all(|(e, _)| !e.is_pure())
    }

    /// `β*λ`: strips trailing CNF terms of cardinality ≤ λ, leaving the
    /// least initial piece whose distance to `β` has cardinality ≤ λ.
    pub fn star_lambda(&self, lambda: CardClass) -> Ordinal {
        let mut terms = self.terms.clone();
        while let Some((e, _)) = terms.last() {
            if e.term_card() <= lambda {
                terms.pop();
            } else {
                break;
            }
        }
        Ordinal { terms }
    }

    /// `β*` = `β*ℵ₀`: least `x ≤ β` with `[x, β]` countable.
    pub fn star(&self) -> Ordinal {
        self.star_lambda(CardClass::Aleph0)
    }

    /// `β**`: `β*` when `cf(β*) = ω` or `β = β* + n` for finite `n`,
    /// else `β* + ω`. Defined for infinite `β`.
    pub fn star_star(&self) -> Result<Ordinal> {
        if self.is_finite() {
            return Err(Error::RequiresInfinite(self.to_string()));
        }
        let s = self.star();
        let gap = s.left_sub(self).expect("star is an initial piece");
        if gap.is_finite() || s.cofinality() == Ordinal::omega() {
            Ok(s)
        } else {
            s.add(&Ordinal::omega())
        }
    }

    /// Parses an expression with κ⁺ permitted.
    pub fn parse(text: &str) -> Result<Ordinal> {
        crate::parse::parse_gated(text, true)
    }

    /// Parses an expression; `allow_kplus = false` rejects the `k+` atom.
    pub fn parse_gated(text: &str, allow_kplus: bool) -> Result<Ordinal> {
        crate::parse::parse_gated(text, allow_kplus)
    }
}

impl FromStr for Ordinal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ordinal::parse(s)
    }
}

impl serde::Serialize for Ordinal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Ordinal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Ordinal::parse(&text).map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Formatting
// ---------------------------------------------------------------------------

/// Renders one term in compact form (no spaces inside the term).
fn term_string(e: &Exponent, c: u64, out: &mut String) {
    if e.is_zero() {
        out.push_str(&c.to_string());
        return;
    }
    if e.is_pure() && e.tail.as_nat() == Some(1) {
        out.push('w');
    } else {
        out.push_str("w^");
        let inner = exponent_string(e);
        if inner.contains('+') || inner.contains('*') {
            out.push('(');
            out.push_str(&inner);
            out.push(')');
        } else {
            out.push_str(&inner);
        }
    }
    if c > 1 {
        out.push('*');
        out.push_str(&c.to_string());
    }
}

/// Compact (unspaced) rendering of an exponent value `κ⁺·kp + κ·ke + tail`.
fn exponent_string(e: &Exponent) -> String {
    let mut parts: Vec<String> = Vec::new();
    if e.kp > 0 {
        if e.kp == 1 {
            parts.push("k+".into());
        } else {
            parts.push(format!("k+*{}", e.kp));
        }
    }
    if !e.ke.is_zero() {
        match e.ke.as_nat() {
            Some(1) => parts.push("k".into()),
            Some(n) => parts.push(format!("k*{n}")),
            None => parts.push(format!("k*({})", compact_string(&e.ke))),
        }
    }
    if !e.tail.is_zero() {
        parts.push(compact_string(&e.tail));
    }
    parts.join("+")
}

/// Compact rendering of a pure ordinal, used inside exponents.
fn compact_string(a: &Ordinal) -> String {
    debug_assert!(a.is_pure());
    let mut out = String::new();
    for (i, (e, c)) in a.terms.iter().enumerate() {
        if i > 0 {
            out.push('+');
        }
        term_string(e, *c, &mut out);
    }
    out
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            term_string(e, *c, &mut out);
        }
        f.write_str(&out)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        f.write_str(&exponent_string(self))
    }
}
