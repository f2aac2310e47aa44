//! Randomised and exhaustive property suites for the structural facts the
//! library relies on. Each suite counts instances that pass, fail, or only
//! satisfy their statement vacuously (hypotheses not met).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::sample::{random_spectral_pair, random_tile};
use crate::error::{Error, Result};
use crate::groupring::{
    is_char_zero, prime_power_vanishing, ring_combine, zero_set, GroupRingElement, RingOp,
    ZeroSet, ZeroTable,
};
use crate::modulus::Modulus;
use crate::sets::ResidueSet;
use crate::spectral::AffineMap;
use crate::structure::{
    class_zero_predicate, cross_profile_check, decompose, digit_set_reconstruct, digit_span,
    generating_pair, grid_implications, is_generating, Conclusion, DigitVerdict, DivisorClass,
    GeneratingPair, PnqrModulus, Shape,
};
use crate::tiling::{profile_complement, ProfileComplement, ProfileInapplicable};
use crate::DEFAULT_BUDGET;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Divisor-class predicates against direct zero-set membership.
    Coro32,
    /// Grid identities under divisor-class hypotheses.
    Lemma33,
    /// Prime-power vanishing criterion against cyclotomic reduction.
    Lemma27,
    /// Digit-set reconstruction, exhaustively.
    Lemma28,
    /// Generating pairs in generating sets, exhaustively.
    Lemma26,
    /// Cross-profile implication on spectral pairs.
    Lemma41,
    /// Explicit complements built from divisor profiles.
    Sec41,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Coro32,
        Suite::Lemma33,
        Suite::Lemma27,
        Suite::Lemma28,
        Suite::Lemma26,
        Suite::Lemma41,
        Suite::Sec41,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Coro32 => "coro32",
            Suite::Lemma33 => "lemma33",
            Suite::Lemma27 => "lemma27",
            Suite::Lemma28 => "lemma28",
            Suite::Lemma26 => "lemma26",
            Suite::Lemma41 => "lemma41",
            Suite::Sec41 => "sec41",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Suite parameters; unset fields take per-suite defaults.
#[derive(Debug, Clone, Default)]
pub struct SuiteParams {
    /// The modulus `N`.
    pub n: Option<u32>,
    pub p: Option<u32>,
    /// Exponent of `p` (suites over `Z_{p^e}`).
    pub e: Option<u32>,
    /// Digit count, or a size bound, depending on the suite.
    pub t: Option<u32>,
    /// Enumerate instead of sampling where both are supported.
    pub exhaustive: Option<bool>,
}

const MAX_LISTED_FAILURES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub params: String,
    pub instances: u64,
    pub passed: u64,
    pub failed: u64,
    /// Instances whose hypotheses did not hold.
    pub vacuous: u64,
    pub notes: BTreeMap<String, u64>,
    /// The first few failures, described.
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite, params: String) -> Self {
        SuiteReport {
            suite,
            params,
            instances: 0,
            passed: 0,
            failed: 0,
            vacuous: 0,
            notes: BTreeMap::new(),
            failures: Vec::new(),
        }
    }

    /// No failures and at least one instance that actually tested something.
    pub fn all_pass(&self) -> bool {
        self.failed == 0 && self.passed > 0
    }

    fn pass(&mut self, weight: u64) {
        self.instances += weight;
        self.passed += weight;
    }

    fn vacuous(&mut self, weight: u64) {
        self.instances += weight;
        self.vacuous += weight;
    }

    fn fail(&mut self, weight: u64, why: impl FnOnce() -> String) {
        self.instances += weight;
        self.failed += weight;
        if self.failures.len() < MAX_LISTED_FAILURES {
            self.failures.push(why());
        }
    }

    fn note(&mut self, key: impl Into<String>, by: u64) {
        *self.notes.entry(key.into()).or_default() += by;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises") + "\n"
    }
}

/// Runs `suite` with `trials` random instances (or, for the exhaustive
/// suites, every instance) from a generator seeded with `seed`.
pub fn lemma_suite(suite: Suite, params: &SuiteParams, trials: u64, seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match suite {
        Suite::Coro32 => coro32(params, trials, &mut rng),
        Suite::Lemma33 => lemma33(params, trials, &mut rng),
        Suite::Lemma27 => lemma27(params, trials, &mut rng),
        Suite::Lemma28 => lemma28(params),
        Suite::Lemma26 => lemma26(params),
        Suite::Lemma41 => lemma41(params, trials, &mut rng),
        Suite::Sec41 => sec41(params, trials, &mut rng),
    }
}

fn readings(params: &SuiteParams, default_n: u32) -> Result<Vec<PnqrModulus>> {
    let n = params.n.unwrap_or(default_n);
    match params.p {
        Some(p) => Ok(vec![PnqrModulus::from_n(n, p)?]),
        None => {
            let all = PnqrModulus::readings(n);
            if all.is_empty() {
                Err(Error::NotPnqr(n))
            } else {
                Ok(all)
            }
        }
    }
}

fn describe(ms: &[PnqrModulus]) -> String {
    let names: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
    format!("N={} readings={}", ms[0].modulus().n(), names.join(","))
}

fn random_affine<R: Rng>(m: &Modulus, rng: &mut R) -> AffineMap {
    let units = m.units();
    let u = *units.choose(rng).expect("units exist");
    AffineMap::new(m, u as i64, rng.random_range(0..m.n()) as i64).expect("unit scale")
}

/// A random subset of `Z_N`: uniform, a union of cosets of a random
/// subgroup, or a digit-tree tile; all but the first moved affinely.
fn random_subset<R: Rng>(m: &Modulus, rng: &mut R) -> ResidueSet {
    let n = m.n();
    let elems: Vec<u32> = match rng.random_range(0..3) {
        0 => {
            let density = rng.random_range(0.1..0.9);
            (0..n).filter(|_| rng.random_bool(density)).collect()
        }
        1 => {
            let divs = m.divisors();
            let d = *divs.choose(rng).expect("divisors exist");
            // Cosets of the subgroup of order `d`, i.e. residues mod `N / d`.
            let index = n / d;
            let reps: Vec<u32> = (0..index).filter(|_| rng.random_bool(0.5)).collect();
            let f = random_affine(m, rng);
            reps.iter()
                .flat_map(|&x| (0..d).map(move |k| x + k * index))
                .map(|x| f.apply(x))
                .collect()
        }
        _ => {
            let divs = m.divisors();
            let size = *divs.choose(rng).expect("divisors exist");
            random_tile(m, size, rng).expect("divisor size").tile.elems().to_vec()
        }
    };
    let elems = if elems.is_empty() { vec![0] } else { elems };
    ResidueSet::new(m.clone(), elems).expect("residues in range")
}

fn coro32<R: Rng>(params: &SuiteParams, trials: u64, rng: &mut R) -> Result<SuiteReport> {
    let ms = readings(params, 60)?;
    let mut report = SuiteReport::new(Suite::Coro32, describe(&ms));
    let modulus = ms[0].modulus().clone();
    for _ in 0..trials {
        let a = random_subset(&modulus, rng);
        let x = a.to_element();
        let z = zero_set(&x)?;
        let mut bad = None;
        for m in &ms {
            let grid = decompose(&x, m)?;
            for c in DivisorClass::all(m) {
                let predicate = class_zero_predicate(&grid, c)?;
                let member = z.contains(c.divisor(m));
                report.note("class_checks", 1);
                report.note("classes_in_zero_set", member as u64);
                if predicate != member && bad.is_none() {
                    bad = Some(format!(
                        "{a} under {m}: class {} (divisor {}) predicate {predicate}, zero set {member}",
                        c.shape,
                        c.divisor(m)
                    ));
                }
            }
        }
        match bad {
            None => report.pass(1),
            Some(why) => report.fail(1, || why),
        }
    }
    Ok(report)
}

/// Sets whose characters vanish on whole families of classes: subgroups of
/// every order `d` (vanishing off multiples of `d`), and the `p` points
/// `{a N / p^k}` (vanishing exactly where `v_p(g) = k - 1`).
fn vanishing_factors(m: &Modulus) -> Vec<GroupRingElement> {
    let n = m.n();
    let mut out = Vec::new();
    for d in m.divisors().into_iter().filter(|&d| d > 1) {
        let step = n / d;
        out.push(ResidueSet::new(m.clone(), (0..d).map(|k| k * step)).expect("in range").to_element());
    }
    for &(p, e) in m.factorization() {
        for k in 2..=e {
            let step = n / p.pow(k);
            out.push(ResidueSet::new(m.clone(), (0..p).map(|a| a * step)).expect("in range").to_element());
        }
    }
    out
}

/// `sum_t R_t F_t`, each `R_t` a small random multiset and each `F_t` a
/// product of one or two vanishing factors.
fn random_vanishing_mix<R: Rng>(m: &Modulus, factors: &[GroupRingElement], rng: &mut R) -> GroupRingElement {
    let mut total = GroupRingElement::zero(m.clone());
    for _ in 0..rng.random_range(1..=3) {
        let mut r = GroupRingElement::zero(m.clone());
        for _ in 0..rng.random_range(1..=3) {
            r.add_term(rng.random_range(0..m.n()) as u64, rng.random_range(1..=2));
        }
        let mut term = r;
        for _ in 0..rng.random_range(1..=2) {
            let f = factors.choose(rng).expect("factors exist");
            term = ring_combine(&term, f, RingOp::Mul).expect("same modulus");
        }
        total = ring_combine(&total, &term, RingOp::Add).expect("same modulus");
    }
    total
}

fn lemma33<R: Rng>(params: &SuiteParams, trials: u64, rng: &mut R) -> Result<SuiteReport> {
    let m = readings(params, 60)?.remove(0);
    let mut report = SuiteReport::new(Suite::Lemma33, describe(std::slice::from_ref(&m)));
    let factors = vanishing_factors(m.modulus());
    let cases: Vec<(Conclusion, u32)> = Conclusion::ALL
        .iter()
        .flat_map(|&c| (0..m.n()).map(move |i| (c, i)))
        .collect();
    let mut accepted: HashMap<(Conclusion, u32), u64> = HashMap::new();
    let max_draws = trials.saturating_mul(1000).max(10_000);
    let mut draws = 0u64;
    while draws < max_draws && cases.iter().any(|c| accepted.get(c).copied().unwrap_or(0) < trials) {
        draws += 1;
        let x = random_vanishing_mix(m.modulus(), &factors, rng);
        if x.is_zero() {
            continue;
        }
        let grid = decompose(&x, &m)?;
        for i in 0..m.n() {
            let mut holds = HashMap::new();
            for s in Shape::ALL {
                holds.insert(s, class_zero_predicate(&grid, DivisorClass::new(s, i))?);
            }
            for &c in &Conclusion::ALL {
                let count = accepted.entry((c, i)).or_default();
                if *count >= trials || !c.hypotheses().iter().all(|s| holds[s]) {
                    continue;
                }
                *count += 1;
                let r = grid_implications(&grid, i, c.hypotheses())?;
                let check = r.checks.iter().find(|k| k.conclusion == c).expect("checked");
                if r.all_hold() {
                    report.pass(1);
                } else {
                    report.fail(1, || {
                        format!("conclusion {} at i={i} fails at {:?}:\n{}", c.number(), check.violation, grid.dump())
                    });
                }
            }
        }
    }
    report.note("draws", draws);
    for (c, i) in cases {
        let got = accepted.get(&(c, i)).copied().unwrap_or(0);
        report.note(format!("case{}_i{i}_accepted", c.number()), got);
        if got < trials {
            report.fail(0, || format!("case {} at i={i}: only {got} accepted instances", c.number()));
            report.failed += 1;
        }
    }
    Ok(report)
}

fn lemma27<R: Rng>(params: &SuiteParams, trials: u64, rng: &mut R) -> Result<SuiteReport> {
    let p = params.p.unwrap_or(2);
    let e = params.e.unwrap_or(4);
    let len = p
        .checked_pow(e)
        .filter(|&l| l >= 2)
        .ok_or_else(|| Error::InvalidArgument(format!("p^e = {p}^{e} out of range")))?;
    let modulus = Modulus::new(len as u64)?;
    let mut report = SuiteReport::new(Suite::Lemma27, format!("p={p} e={e}"));
    let period = (len / p) as usize;
    for _ in 0..trials {
        let c: Vec<i64> = if rng.random_bool(0.5) {
            (0..len).map(|_| rng.random_range(-2..=3)).collect()
        } else {
            let base: Vec<i64> = (0..period).map(|_| rng.random_range(-2..=3)).collect();
            let mut c: Vec<i64> = (0..len as usize).map(|i| base[i % period]).collect();
            if rng.random_bool(0.5) {
                let at = rng.random_range(0..len as usize);
                c[at] += if rng.random_bool(0.5) { 1 } else { -1 };
            }
            c
        };
        let criterion = prime_power_vanishing(&c, p, e)?;
        let generic = is_char_zero(&GroupRingElement::from_i64(modulus.clone(), &c)?, 1);
        report.note("vanishing", generic as u64);
        if criterion == generic {
            report.pass(1);
        } else {
            report.fail(1, || format!("{c:?}: criterion {criterion}, reduction {generic}"));
        }
    }
    Ok(report)
}

fn lemma28(params: &SuiteParams) -> Result<SuiteReport> {
    let p = params.p.unwrap_or(2);
    let n = params.e.unwrap_or(3);
    let t = params.t.unwrap_or(2);
    if t == 0 || t > n {
        return Err(Error::InvalidArgument(format!("need 1 <= t <= n, got t={t}, n={n}")));
    }
    let pn = p
        .checked_pow(n)
        .ok_or_else(|| Error::InvalidArgument("p^n too large".into()))?;
    let modulus = Modulus::new(pn as u64)?;
    let mut report = SuiteReport::new(Suite::Lemma28, format!("p={p} n={n} t={t}"));
    // Index sets of size t containing n - 1.
    let mut index_sets = Vec::new();
    for rest in combinations(n - 1, (t - 1) as usize) {
        let mut digits: std::collections::BTreeSet<u32> = rest.into_iter().collect();
        digits.insert(n - 1);
        index_sets.push(digits);
    }
    let size = p.pow(t) as usize;
    for digits in index_sets {
        report.note("index_sets", 1);
        let mut in_span = vec![false; pn as usize];
        for s in digit_span(p, &digits) {
            in_span[s as usize] = true;
        }
        // Every V containing 0 with all differences in the span, by
        // backtracking over ascending residues.
        let mut found = Vec::new();
        let mut v = vec![0u32];
        extend_digit_sets(&modulus, &in_span, size, &mut v, &mut found);
        for v in found {
            let set = ResidueSet::new(modulus.clone(), v)?;
            match digit_set_reconstruct(&set, p, n, &digits)? {
                DigitVerdict::Standard(span) if span.as_slice() == set.elems() => report.pass(1),
                other => report.fail(1, || format!("V={set}, I={digits:?}: {other:?}")),
            }
        }
    }
    Ok(report)
}

fn extend_digit_sets(m: &Modulus, in_span: &[bool], size: usize, v: &mut Vec<u32>, found: &mut Vec<Vec<u32>>) {
    if v.len() == size {
        found.push(v.clone());
        return;
    }
    let last = *v.last().expect("holds 0");
    for x in last + 1..m.n() {
        if v.iter().all(|&y| in_span[m.sub(x, y) as usize] && in_span[m.sub(y, x) as usize]) {
            v.push(x);
            extend_digit_sets(m, in_span, size, v, found);
            v.pop();
        }
    }
}

/// `k`-subsets of `0..n`, each ascending, in lexicographic order.
fn combinations(n: u32, k: usize) -> Vec<Vec<u32>> {
    fn go(start: u32, n: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn lemma26(params: &SuiteParams) -> Result<SuiteReport> {
    let n = params.n.unwrap_or(30);
    let max_size = params.t.unwrap_or(4);
    let m = Modulus::new(n as u64)?;
    let primes: Vec<u32> = m.primes().collect();
    if primes.len() < 2 {
        return Err(Error::InvalidArgument(format!("{n} has fewer than two prime divisors")));
    }
    let mut report = SuiteReport::new(Suite::Lemma26, format!("N={n} max|T|={max_size}"));
    for size in 1..=max_size.min(n) {
        for rest in combinations(n - 1, (size - 1) as usize) {
            let t = ResidueSet::new(m.clone(), std::iter::once(0).chain(rest.iter().map(|x| x + 1)))?;
            let generating = is_generating(&t)?;
            for (i, &p) in primes.iter().enumerate() {
                for &q in &primes[i + 1..] {
                    match generating_pair(&t, p, q)? {
                        GeneratingPair::Witness(t1, t2) => {
                            let d = t2 - t1;
                            if t.contains(t1) && t.contains(t2) && d % p != 0 && d % q != 0 {
                                report.pass(1);
                            } else {
                                report.fail(1, || format!("{t}: bad witness ({t1}, {t2}) for {p},{q}"));
                            }
                        }
                        GeneratingPair::NotGenerating if !generating => report.vacuous(1),
                        other => report.fail(1, || format!("{t} for {p},{q}: {other:?}")),
                    }
                }
            }
        }
    }
    Ok(report)
}

fn rotate_up(n: u32, mask: u64, s: u32) -> u64 {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    if s == 0 {
        mask
    } else {
        ((mask << s) | (mask >> (n - s))) & full
    }
}

/// Counts the `k`-cliques containing 0 in the Cayley graph with connection
/// mask `conn`, grouped by the zero-class mask of the clique.
fn cliques_by_zero_class(table: &ZeroTable, conn: u64, k: usize) -> HashMap<u64, u64> {
    fn go(
        table: &ZeroTable,
        conn: u64,
        k: usize,
        cand: u64,
        cur: &mut Vec<u32>,
        scratch: &mut Vec<i64>,
        out: &mut HashMap<u64, u64>,
    ) {
        if cur.len() == k {
            *out.entry(table.zero_class_mask(cur, scratch)).or_default() += 1;
            return;
        }
        let n = table.modulus().n();
        let mut rest = cand;
        while rest != 0 {
            let x = rest.trailing_zeros();
            rest &= rest - 1;
            cur.push(x);
            go(table, conn, k, rest & rotate_up(n, conn, x), cur, scratch, out);
            cur.pop();
        }
    }
    let mut out = HashMap::new();
    go(table, conn, k, conn, &mut vec![0], &mut Vec::new(), &mut out);
    out
}

fn zero_set_of(table: &ZeroTable, class_mask: u64) -> ZeroSet {
    let divs = table.divisors();
    ZeroSet::from_classes(
        table.modulus().clone(),
        (0..divs.len()).filter(|&i| class_mask >> i & 1 == 1).map(|i| divs[i]),
    )
}

fn lemma41<R: Rng>(params: &SuiteParams, trials: u64, rng: &mut R) -> Result<SuiteReport> {
    let ms = readings(params, 30)?;
    let modulus = ms[0].modulus().clone();
    let n = modulus.n();
    let exhaustive = params.exhaustive.unwrap_or(n <= 36);
    let mut params_text = describe(&ms);
    let mut report = SuiteReport::new(Suite::Lemma41, String::new());
    let tally = |report: &mut SuiteReport, za: &ZeroSet, zb: &ZeroSet, weight: u64| {
        let results: Vec<_> = ms.iter().map(|m| cross_profile_check(za, zb, m)).collect();
        for (m, r) in ms.iter().zip(&results) {
            report.note(format!("nonvacuous[{m}]"), weight * !r.is_vacuous() as u64);
        }
        if results.iter().all(|r| r.is_vacuous()) {
            report.vacuous(weight);
        } else if results.iter().all(|r| r.holds) {
            report.pass(weight);
        } else {
            report.fail(weight, || {
                format!("zero sets {:?} / {:?}", za.divisor_classes(), zb.divisor_classes())
            });
        }
    };
    if exhaustive {
        if n > 64 {
            return Err(Error::InvalidArgument("exhaustive mode needs N <= 64".into()));
        }
        let max_size = params.t.unwrap_or(6).min(n);
        params_text += &format!(" exhaustive |A|<={max_size}");
        let table = ZeroTable::new(modulus.clone());
        let mut groups: HashMap<(u64, usize), u64> = HashMap::new();
        let mut scratch = Vec::new();
        for size in 1..=max_size {
            for rest in combinations(n - 1, (size - 1) as usize) {
                let a: Vec<u32> = std::iter::once(0).chain(rest.iter().map(|x| x + 1)).collect();
                *groups.entry((table.zero_class_mask(&a, &mut scratch), a.len())).or_default() += 1;
            }
        }
        let mut keys: Vec<_> = groups.keys().copied().collect();
        keys.sort_unstable();
        for (za_mask, k) in keys {
            let count_a = groups[&(za_mask, k)];
            let conn = table.members_mask(za_mask) & !1;
            let za = zero_set_of(&table, za_mask);
            let bs = cliques_by_zero_class(&table, conn, k);
            let mut zb_masks: Vec<_> = bs.keys().copied().collect();
            zb_masks.sort_unstable();
            report.note("sets_a", count_a);
            report.note("sets_a_with_spectrum", if bs.is_empty() { 0 } else { count_a });
            for zb_mask in zb_masks {
                tally(&mut report, &za, &zero_set_of(&table, zb_mask), count_a * bs[&zb_mask]);
            }
        }
    } else {
        params_text += &format!(" sampled pairs={trials}");
        let sizes: Vec<u32> = modulus.divisors().into_iter().filter(|&d| d > 1 && d < n).collect();
        let mut got = 0;
        while got < trials {
            let size = *sizes.choose(rng).expect("proper divisors exist");
            let Some((a, b)) = random_spectral_pair(&modulus, size, DEFAULT_BUDGET, rng)? else {
                report.note("inconclusive_searches", 1);
                continue;
            };
            got += 1;
            tally(&mut report, &zero_set(&a.to_element())?, &zero_set(&b.to_element())?, 1);
        }
    }
    report.params = params_text;
    Ok(report)
}

fn sec41<R: Rng>(params: &SuiteParams, trials: u64, rng: &mut R) -> Result<SuiteReport> {
    let ms = readings(params, 60)?;
    let modulus = ms[0].modulus().clone();
    let n = modulus.n();
    let mut report = SuiteReport::new(Suite::Sec41, format!("{} sampled pairs={trials}", describe(&ms)));
    // The subgroup of order qr, with itself as spectrum.
    for m in &ms {
        let step = m.pn();
        let sub = ResidueSet::new(modulus.clone(), (0..n / step).map(|k| k * step))?;
        let expected = ResidueSet::new(modulus.clone(), (0..m.pn()).map(|k| k * m.q() * m.r()))?;
        report.note("worked_examples", 1);
        match profile_complement(&sub, &sub, m)? {
            ProfileComplement::Complement(t) if t == expected => report.pass(1),
            other => report.fail(1, || format!("subgroup {sub} under {m}: {other:?}")),
        }
    }
    let mut sizes: Vec<u32> = Vec::new();
    for m in &ms {
        for t in 0..m.n() {
            sizes.push(m.p().pow(t) * m.q() * m.r());
        }
    }
    let all: Vec<u32> = modulus.divisors().into_iter().filter(|&d| d > 1 && d < n).collect();
    let mut got = 0;
    while got < trials {
        let size = if rng.random_bool(0.8) {
            *sizes.choose(rng).expect("sizes exist")
        } else {
            *all.choose(rng).expect("proper divisors exist")
        };
        let Some((a, b)) = random_spectral_pair(&modulus, size, DEFAULT_BUDGET, rng)? else {
            report.note("inconclusive_searches", 1);
            continue;
        };
        got += 1;
        for m in &ms {
            match profile_complement(&a, &b, m)? {
                ProfileComplement::Complement(_) => report.pass(1),
                ProfileComplement::ConstructionFailed(t) => {
                    report.fail(1, || format!("A={a} B={b} under {m}: {t} does not tile"))
                }
                ProfileComplement::Inapplicable(why) => {
                    report.vacuous(1);
                    report.note(
                        match why {
                            ProfileInapplicable::NotSpectral => "inapplicable_not_spectral",
                            ProfileInapplicable::EdgeClasses { .. } => "inapplicable_edge_classes",
                            ProfileInapplicable::Size { .. } => "inapplicable_size",
                        },
                        1,
                    );
                }
            }
        }
    }
    Ok(report)
}
