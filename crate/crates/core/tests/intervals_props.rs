//! Randomized laws for interval sets and shifted-sum realization.
//!
//! The heavyweight checks are the realization contract — every enumerated
//! shifted sum must be realizable as a pair of interval sets with the exact
//! advertised order types — and the shrink law: replacing the witness sets
//! by interval subsets of the same order types leaves the order type of the
//! union unchanged.

use ordcomp_core::intervals::{realize_shifted_sum, IntervalSet};
use ordcomp_core::sums::{is_shifted_sum, shifted_sums};
use ordcomp_core::{Error, Ordinal};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn o(s: &str) -> Ordinal {
    Ordinal::parse(s).unwrap()
}

/// Random ordinal with pure finite exponents `≤ max_exp` and at most
/// `max_len` terms.
fn random_pure(rng: &mut ChaCha8Rng, max_exp: u64, max_len: usize) -> Ordinal {
    let len = rng.gen_range(0..=max_len);
    let mut exps: Vec<u64> = (0..len).map(|_| rng.gen_range(0..=max_exp)).collect();
    exps.sort_unstable_by(|a, b| b.cmp(a));
    exps.dedup();
    let mut acc = Ordinal::zero();
    for e in exps {
        let pow = Ordinal::omega().pow(&Ordinal::from_nat(e)).unwrap();
        let term = pow.mul(&Ordinal::from_nat(rng.gen_range(1..=3))).unwrap();
        acc = acc.add(&term).unwrap();
    }
    acc
}

/// Random ordinal `≤ x`: truncate the normal form at a random term with a
/// random smaller coefficient.
fn random_at_most(rng: &mut ChaCha8Rng, x: &Ordinal) -> Ordinal {
    if x.is_zero() || rng.gen_bool(0.2) {
        return x.clone();
    }
    let terms = x.terms();
    let cut = rng.gen_range(0..terms.len());
    let mut acc = Ordinal::zero();
    for (e, c) in &terms[..cut] {
        acc = acc.add(&Ordinal::single(e.clone(), *c)).unwrap();
    }
    let (e, c) = &terms[cut];
    let keep = rng.gen_range(0..=*c);
    acc.add(&Ordinal::single(e.clone(), keep)).unwrap()
}

fn random_below(rng: &mut ChaCha8Rng, x: &Ordinal) -> Ordinal {
    for _ in 0..4 {
        let r = random_at_most(rng, x);
        if r < *x {
            return r;
        }
    }
    Ordinal::zero()
}

/// Random interval subset of `[0, bound)` built from sorted random cuts.
fn random_set(rng: &mut ChaCha8Rng, bound: &Ordinal) -> IntervalSet {
    let mut cuts: Vec<Ordinal> = (0..rng.gen_range(0..=6))
        .map(|_| random_at_most(rng, bound))
        .collect();
    cuts.sort();
    cuts.dedup();
    let mut pieces = Vec::new();
    for pair in cuts.chunks(2) {
        if let [lo, hi] = pair {
            if rng.gen_bool(0.75) {
                pieces.push((lo.clone(), hi.clone()));
            }
        }
    }
    IntervalSet::new(bound.clone(), pieces).unwrap()
}

#[test]
fn set_algebra_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1A7E);
    for _ in 0..300 {
        let mut bound = random_pure(&mut rng, 3, 3);
        if bound.is_zero() {
            bound = Ordinal::omega();
        }
        let a = random_set(&mut rng, &bound);
        let b = random_set(&mut rng, &bound);
        let c = random_set(&mut rng, &bound);

        assert_eq!(a.union(&b).unwrap(), b.union(&a).unwrap());
        assert_eq!(a.intersect(&b).unwrap(), b.intersect(&a).unwrap());
        assert_eq!(
            a.union(&b).unwrap().union(&c).unwrap(),
            a.union(&b.union(&c).unwrap()).unwrap()
        );
        assert_eq!(
            a.intersect(&b).unwrap().intersect(&c).unwrap(),
            a.intersect(&b.intersect(&c).unwrap()).unwrap()
        );
        assert_eq!(a.union(&a.intersect(&b).unwrap()).unwrap(), a);
        assert_eq!(a.intersect(&a.union(&b).unwrap()).unwrap(), a);
        assert_eq!(a.complement().complement(), a);
        assert_eq!(
            a.union(&b).unwrap().complement(),
            a.complement().intersect(&b.complement()).unwrap()
        );

        let union_ot = a.union(&b).unwrap().order_type();
        assert!(union_ot <= a.order_type().natural_sum(&b.order_type()).unwrap());
        assert!(a.intersect(&b).unwrap().order_type() <= a.order_type());
    }
}

#[test]
fn point_membership_matches_pieces() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xBEA7);
    for _ in 0..200 {
        let bound = o("w^3");
        let a = random_set(&mut rng, &bound);
        let b = random_set(&mut rng, &bound);
        let x = random_below(&mut rng, &bound);
        let u = a.union(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(u.contains_point(&x), a.contains_point(&x) || b.contains_point(&x));
        assert_eq!(i.contains_point(&x), a.contains_point(&x) && b.contains_point(&x));
        assert_eq!(a.complement().contains_point(&x), !a.contains_point(&x));
    }
}

/// Order-type-preserving interval shrink of one witness piece: keep a tail
/// whose offset is below the lead power of the piece length, optionally
/// preceded by a stray chunk (absorbed by the tail's lead term).
fn shrink_piece(
    rng: &mut ChaCha8Rng,
    lo: &Ordinal,
    hi: &Ordinal,
) -> Vec<(Ordinal, Ordinal)> {
    let len = lo.left_sub(hi).unwrap();
    if len.is_finite() || rng.gen_bool(0.25) {
        return vec![(lo.clone(), hi.clone())];
    }
    let lead_pow = Ordinal::single(len.lead().unwrap().0.clone(), 1);
    let d = random_below(rng, &lead_pow);
    let tail_lo = lo.add(&d).unwrap();
    let mut out = Vec::new();
    if rng.gen_bool(0.5) && !d.is_zero() {
        let c1 = random_at_most(rng, &d);
        let c2 = random_at_most(rng, &d);
        let (c1, c2) = if c1 <= c2 { (c1, c2) } else { (c2, c1) };
        if c1 < c2 {
            out.push((lo.add(&c1).unwrap(), lo.add(&c2).unwrap()));
        }
    }
    out.push((tail_lo, hi.clone()));
    out
}

fn shrink_same_order_type(rng: &mut ChaCha8Rng, s: &IntervalSet) -> IntervalSet {
    let mut pieces = Vec::new();
    for (lo, hi) in s.pieces() {
        pieces.extend(shrink_piece(rng, lo, hi));
    }
    IntervalSet::new(s.bound().clone(), pieces).unwrap()
}

#[test]
fn realization_is_exact_and_shrink_stable() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    let mut witnesses = 0usize;
    for _ in 0..40 {
        let a = random_pure(&mut rng, 3, 3).succ().unwrap();
        let b = random_pure(&mut rng, 3, 3).succ().unwrap();
        for g in shifted_sums(&a, &b).unwrap() {
            let (i, j) = realize_shifted_sum(&g, &a, &b).unwrap();
            assert_eq!(i.order_type(), a, "left witness for {g} = {a} (+) {b}");
            assert_eq!(j.order_type(), b, "right witness for {g} = {a} (+) {b}");
            let u = i.union(&j).unwrap();
            assert_eq!(u.order_type(), g, "union order type for {g}");
            assert_eq!(u, IntervalSet::full(g.clone()), "witnesses must cover [0, g)");

            for round in 0..3 {
                let i2 = shrink_same_order_type(&mut rng, &i);
                let j2 = shrink_same_order_type(&mut rng, &j);
                assert!(i2.intersect(&i.complement()).unwrap().is_empty());
                assert_eq!(i2.order_type(), a, "shrink {round} must keep the order type");
                assert_eq!(j2.order_type(), b);
                assert_eq!(
                    i2.union(&j2).unwrap().order_type(),
                    g,
                    "shrunk witnesses for {g} = {a} (+) {b}"
                );
            }
            witnesses += 1;
        }
    }
    assert!(witnesses >= 100, "only {witnesses} realized witnesses");
}

#[test]
fn non_members_fail_to_realize() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xD00D);
    let mut rejected = 0usize;
    for _ in 0..400 {
        let a = random_pure(&mut rng, 2, 2).succ().unwrap();
        let b = random_pure(&mut rng, 2, 2).succ().unwrap();
        let g = random_pure(&mut rng, 3, 3).succ().unwrap();
        if is_shifted_sum(&g, &a, &b).unwrap() {
            realize_shifted_sum(&g, &a, &b).unwrap();
        } else {
            assert!(matches!(
                realize_shifted_sum(&g, &a, &b),
                Err(Error::NotAShiftedSum { .. })
            ));
            rejected += 1;
        }
    }
    assert!(rejected >= 50, "only {rejected} rejections sampled");
}
