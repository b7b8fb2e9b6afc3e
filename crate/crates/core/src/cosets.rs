//! q-cyclotomic cosets modulo n: orbits of residues under multiplication by q,
//! their leaders (orbit minima), q-adic digit manipulation, and the brute-force
//! enumeration that serves as ground truth for every closed-form leader formula.

use crate::error::{Error, Result};
use crate::numutil::{gcd, mulmod, powmod};
use serde::{Deserialize, Serialize};

/// Default cap on n*m elementary steps for full enumeration sweeps.
pub const DEFAULT_ENUM_BUDGET: u64 = 1_000_000_000;

/// Smallest m >= 1 with q^m = 1 mod n.
pub fn mult_order(q: u64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("modulus {n} must be at least 2")));
    }
    if gcd(q % n, n) != 1 {
        return Err(Error::NotCoprime { q, n });
    }
    let mut acc = q % n;
    let mut m = 1u64;
    while acc != 1 {
        acc = mulmod(acc, q, n);
        m += 1;
    }
    Ok(m)
}

/// The pair (q, n) with gcd(q, n) = 1 plus the multiplicative order m of q mod n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CosetContext {
    q: u64,
    n: u64,
    m: u64,
}

impl CosetContext {
    /// q must be a prime power (the coding-theoretic setting), coprime to n.
    pub fn new(q: u64, n: u64) -> Result<Self> {
        if q < 2 || crate::numutil::factorize(q).len() != 1 {
            return Err(Error::InvalidInput(format!("q = {q} must be a prime power")));
        }
        let m = mult_order(q, n)?;
        Ok(Self { q, n, m })
    }

    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn n(&self) -> u64 {
        self.n
    }
    /// ord_n(q)
    pub fn m(&self) -> u64 {
        self.m
    }

    fn check_residue(&self, t: u64) -> Result<()> {
        if t >= self.n {
            return Err(Error::ResidueOutOfRange { t, n: self.n });
        }
        Ok(())
    }
}

/// One orbit {t q^j mod n} with its leader and size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicCoset {
    pub leader: u64,
    /// Ascending.
    pub elements: Vec<u64>,
    pub size: u64,
}

/// A coset leader with the size of its coset, as serialized by the CLI.
/// The leader value follows the big-integer JSON rule (string above 2^53).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetLeader {
    #[serde(
        serialize_with = "crate::jsonnum::serialize_u64",
        deserialize_with = "crate::jsonnum::deserialize_u64"
    )]
    pub leader: u64,
    pub size: u64,
}

/// Full coset of t, elements sorted ascending.
pub fn coset_of(ctx: &CosetContext, t: u64) -> Result<CyclotomicCoset> {
    ctx.check_residue(t)?;
    let mut elements = Vec::new();
    let mut x = t;
    loop {
        elements.push(x);
        x = mulmod(x, ctx.q, ctx.n);
        if x == t {
            break;
        }
    }
    elements.sort_unstable();
    Ok(CyclotomicCoset { leader: elements[0], size: elements.len() as u64, elements })
}

/// min of the coset of t.
pub fn leader_of(ctx: &CosetContext, t: u64) -> Result<u64> {
    ctx.check_residue(t)?;
    let mut min = t;
    let mut x = mulmod(t, ctx.q, ctx.n);
    while x != t {
        min = min.min(x);
        x = mulmod(x, ctx.q, ctx.n);
    }
    Ok(min)
}

fn check_budget(ctx: &CosetContext, budget: u64) -> Result<()> {
    let needed = ctx.n as u128 * ctx.m as u128;
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, cap: budget as u128 });
    }
    Ok(())
}

/// Visit every coset once, ascending by leader. The sweep marks visited
/// residues in a bit set, so each unvisited residue seen in ascending order
/// is the minimum of its orbit.
fn sweep_cosets(ctx: &CosetContext, budget: u64, mut emit: impl FnMut(u64, u64)) -> Result<()> {
    check_budget(ctx, budget)?;
    let n = ctx.n as usize;
    let mut seen = vec![0u64; n / 64 + 1];
    for t in 0..ctx.n {
        if seen[(t / 64) as usize] >> (t % 64) & 1 == 1 {
            continue;
        }
        let mut size = 0u64;
        let mut x = t;
        loop {
            seen[(x / 64) as usize] |= 1 << (x % 64);
            size += 1;
            x = mulmod(x, ctx.q, ctx.n);
            if x == t {
                break;
            }
        }
        emit(t, size);
    }
    Ok(())
}

/// All coset leaders with sizes, ascending by leader.
pub fn coset_leaders(ctx: &CosetContext, budget: u64) -> Result<Vec<CosetLeader>> {
    let mut out = Vec::new();
    sweep_cosets(ctx, budget, |leader, size| out.push(CosetLeader { leader, size }))?;
    Ok(out)
}

/// The k largest coset leaders, descending, each with its coset size.
/// Fewer than k are returned when fewer leaders exist.
pub fn k_largest_leaders(ctx: &CosetContext, k: usize, budget: u64) -> Result<Vec<CosetLeader>> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    // The ascending sweep emits leaders in increasing order; keep the tail.
    let mut ring: std::collections::VecDeque<CosetLeader> = std::collections::VecDeque::new();
    sweep_cosets(ctx, budget, |leader, size| {
        if ring.len() == k {
            ring.pop_front();
        }
        ring.push_back(CosetLeader { leader, size });
    })?;
    Ok(ring.into_iter().rev().collect())
}

/// [t q^j]_n
pub fn rotate_residue(ctx: &CosetContext, t: u64, j: u64) -> Result<u64> {
    ctx.check_residue(t)?;
    if j >= ctx.m {
        return Err(Error::InvalidInput(format!("rotation exponent {j} must be below m = {}", ctx.m)));
    }
    Ok(mulmod(t, powmod(ctx.q, j as u128, ctx.n), ctx.n))
}

/// Exactly m digits of t in base q, most significant first.
pub fn q_digits(t: u64, q: u64, m: u32) -> Result<Vec<u64>> {
    let cap = (q as u128).checked_pow(m);
    if cap.is_none_or(|c| (t as u128) >= c) {
        return Err(Error::WidthTooSmall { t, q, m });
    }
    let mut v = t;
    let mut out = vec![0u64; m as usize];
    for d in out.iter_mut().rev() {
        *d = v % q;
        v /= q;
    }
    Ok(out)
}

/// Run-length decomposition of a residue modulo n = (q^m - 1)/(q - 1) whose
/// digit string is a leading zero followed by non-increasing runs of the
/// values q-1 down to 1. `runs[idx]` holds the length of the run of value
/// q-1-idx, so `runs[0]` counts the q-1 digits and `runs[q-2]` the 1 digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunLengthForm {
    pub q: u64,
    pub m: u64,
    pub runs: Vec<u64>,
}

/// Outcome of [`run_length_form`]: the shape test is part of the method, so a
/// residue outside the shape is a value, not an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunLengthOutcome {
    Form(RunLengthForm),
    NotMonotone,
}

impl RunLengthForm {
    /// Run length of the digit value v (1 <= v <= q-1).
    pub fn run(&self, v: u64) -> u64 {
        self.runs[(self.q - 1 - v) as usize]
    }

    /// The digit string (most significant first): 0, then the runs.
    pub fn digits(&self) -> Vec<u64> {
        let mut out = vec![0u64];
        for (idx, &len) in self.runs.iter().enumerate() {
            let v = self.q - 1 - idx as u64;
            out.extend(std::iter::repeat_n(v, len as usize));
        }
        out
    }

    /// Base-q evaluation of the digit string.
    pub fn value(&self) -> u64 {
        self.digits().iter().fold(0u64, |acc, &d| acc * self.q + d)
    }

    /// j = sum of the run lengths of values >= l: the rotation exponent at
    /// which the orbit element takes the closed run-length shape again.
    pub fn rotation_exponent(&self, l: u64) -> u64 {
        (l..self.q).map(|v| self.run(v)).sum()
    }

    /// Closed form of [t q^j]_n at j = rotation_exponent(l): values above l
    /// rotate to the bottom of the digit range and the run of 1s absorbs the
    /// leading zero. Well-formed for 2 <= l <= q-1 with every run positive;
    /// returns None otherwise.
    pub fn rotated(&self, l: u64) -> Option<RunLengthForm> {
        if l < 2 || l > self.q - 1 || self.runs.contains(&0) {
            return None;
        }
        let mut new_runs = Vec::with_capacity(self.runs.len());
        // Values q-1 down to q-l+1 take the lengths of old values l-1 down to 1,
        // the last of them stretched by one.
        for v in (1..=l - 1).rev() {
            let extra = u64::from(v == 1);
            new_runs.push(self.run(v) + extra);
        }
        // Values q-l down to 1 take the lengths of old values q-1 down to l,
        // the last of them shortened by one.
        for v in (l..=self.q - 1).rev() {
            let shrink = u64::from(v == l);
            new_runs.push(self.run(v) - shrink);
        }
        Some(RunLengthForm { q: self.q, m: self.m, runs: new_runs })
    }
}

/// Decompose t modulo n = (q^m - 1)/(q - 1) into its run-length form, or
/// report NotMonotone when the digit string does not have the shape.
pub fn run_length_form(ctx: &CosetContext, t: u64) -> Result<RunLengthOutcome> {
    let q = ctx.q;
    if q < 3 || (q.pow(ctx.m as u32) - 1) / (q - 1) != ctx.n {
        return Err(Error::WrongFamily("n must be (q^m - 1)/(q - 1) with q >= 3"));
    }
    ctx.check_residue(t)?;
    let digits = q_digits(t, q, ctx.m as u32)?;
    if digits[0] != 0 {
        return Ok(RunLengthOutcome::NotMonotone);
    }
    let body = &digits[1..];
    let non_increasing = body.windows(2).all(|w| w[0] >= w[1]);
    let positive_tail = t == 0 || body.last().is_none_or(|&d| d >= 1);
    if !non_increasing || !positive_tail {
        return Ok(RunLengthOutcome::NotMonotone);
    }
    let mut runs = vec![0u64; (q - 1) as usize];
    for &d in body {
        if d >= 1 {
            runs[(q - 1 - d) as usize] += 1;
        }
    }
    Ok(RunLengthOutcome::Form(RunLengthForm { q, m: ctx.m, runs }))
}
