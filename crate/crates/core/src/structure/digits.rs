use std::collections::BTreeSet;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::modulus::Modulus;
use crate::sets::ResidueSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DigitHypothesis {
    /// `|V| = p^{|I|}`.
    Size,
    /// `n - 1` is in `I`.
    TopDigit,
    /// `0` is in `V`.
    ContainsZero,
    /// `V - V` lies in the digit span of `I`.
    Differences,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DigitVerdict {
    /// Hypotheses hold and `V` is the full digit span, returned ascending.
    Standard(Vec<u32>),
    HypothesesFail(Vec<DigitHypothesis>),
    /// Hypotheses hold but `V` differs from the span.
    Counterexample,
}

/// `{sum_{i in I} a_i p^i : 0 <= a_i < p}`, ascending.
pub fn digit_span(p: u32, digits: &BTreeSet<u32>) -> Vec<u32> {
    let mut span = vec![0u32];
    for &i in digits {
        let step = p.pow(i);
        span = span
            .iter()
            .flat_map(|&s| (0..p).map(move |a| s + a * step))
            .collect();
    }
    span.sort_unstable();
    span
}

/// For `V` in `Z_{p^n}` with `|V| = p^{|I|}`, `n - 1 in I`, `0 in V` and
/// `V - V` inside the digit span of `I`, `V` must be that span. Reports
/// which hypotheses fail otherwise.
pub fn digit_set_reconstruct(v: &ResidueSet, p: u32, n: u32, digits: &BTreeSet<u32>) -> Result<DigitVerdict> {
    let pn = p
        .checked_pow(n)
        .ok_or_else(|| Error::InvalidArgument("p^n too large".into()))?;
    if v.n() != pn {
        return Err(Error::ModulusMismatch {
            left: v.n(),
            right: pn,
        });
    }
    if digits.iter().any(|&i| i >= n) {
        let bad = *digits.iter().next_back().expect("nonempty");
        return Err(Error::ExponentOutOfRange { exponent: bad, n });
    }
    let span = digit_span(p, digits);
    let in_span: BTreeSet<u32> = span.iter().copied().collect();
    let m = v.modulus();
    let mut failed = Vec::new();
    if v.len() != span.len() {
        failed.push(DigitHypothesis::Size);
    }
    if n == 0 || !digits.contains(&(n - 1)) {
        failed.push(DigitHypothesis::TopDigit);
    }
    if !v.contains(0) {
        failed.push(DigitHypothesis::ContainsZero);
    }
    let closed = v
        .iter()
        .all(|x| v.iter().all(|y| in_span.contains(&m.sub(x, y))));
    if !closed {
        failed.push(DigitHypothesis::Differences);
    }
    if !failed.is_empty() {
        return Ok(DigitVerdict::HypothesesFail(failed));
    }
    Ok(if v.elems() == span.as_slice() {
        DigitVerdict::Standard(span)
    } else {
        DigitVerdict::Counterexample
    })
}

/// `gcd(N, x - x_0 for x in X) = 1`, i.e. `X - X` generates `Z_N`.
pub fn is_generating(x: &ResidueSet) -> Result<bool> {
    let first = *x.elems().first().ok_or(Error::EmptySet)?;
    let g = x
        .iter()
        .fold(x.n(), |acc, e| acc.gcd(&(e - first)));
    Ok(g == 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratingPair {
    /// `t1 < t2` in `T` with neither prime dividing `t2 - t1`.
    Witness(u32, u32),
    /// `T` does not generate `Z_N`; no witness is promised.
    NotGenerating,
    /// `T` generates but no pair works.
    Missing,
}

/// Searches `T` (containing 0) for `t1 < t2` with `p` and `q` both coprime
/// to `t2 - t1`. Pairs are scanned in lexicographic order.
pub fn generating_pair(t: &ResidueSet, p: u32, q: u32) -> Result<GeneratingPair> {
    let m: &Modulus = t.modulus();
    for prime in [p, q] {
        if m.exponent_of(prime) == 0 {
            return Err(Error::NotPrimeDivisor { prime, n: m.n() });
        }
    }
    if p == q {
        return Err(Error::InvalidArgument("primes must be distinct".into()));
    }
    if !t.contains(0) {
        return Err(Error::MissingZero("T"));
    }
    let e = t.elems();
    for (i, &t1) in e.iter().enumerate() {
        for &t2 in &e[i + 1..] {
            let d = t2 - t1;
            if d % p != 0 && d % q != 0 {
                return Ok(GeneratingPair::Witness(t1, t2));
            }
        }
    }
    Ok(if is_generating(t)? {
        GeneratingPair::Missing
    } else {
        GeneratingPair::NotGenerating
    })
}
