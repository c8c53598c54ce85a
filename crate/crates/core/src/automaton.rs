//! Finite-state acceptors for the three digit-sequence conditions.
//!
//! All three conditions leave the first non-zero digit free and then force
//! every later non-zero digit to be a single rotation step away from the
//! previous one. They differ only in how the direction of that step is chosen:
//!
//! * [`Condition::Grc`]: always forward (multiply by e^{iθ}).
//! * [`Condition::Src`]: forward iff the 1-based position of the last non-zero
//!   digit is odd.
//! * [`Condition::Ac`]: forward iff the number of non-zero digits seen so far
//!   is odd.
//!
//! Finite strings are truncations; a string is valid iff each digit is allowed
//! by the state reached on its prefix, so validity is prefix-closed and any
//! valid string extends by zeros.

use std::fmt;

use crate::error::{Error, Result};
use crate::numerics::{rot_step, Digit, RationalAngle, Step};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    /// generalized revolving
    Grc,
    /// signed revolving
    Src,
    /// alternating
    Ac,
}

impl Condition {
    pub const ALL: [Condition; 3] = [Condition::Grc, Condition::Src, Condition::Ac];

    pub fn name(&self) -> &'static str {
        match self {
            Condition::Grc => "GRC",
            Condition::Src => "SRC",
            Condition::Ac => "AC",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct AutomatonState {
    seen_nonzero: bool,
    last_rot: u32,
    /// parity of j₀, the position of the last non-zero digit
    pos_odd: bool,
    /// parity of the number of non-zero digits consumed
    count_odd: bool,
    position: usize,
}

impl AutomatonState {
    pub fn start() -> Self {
        Self::default()
    }

    pub fn seen_nonzero(&self) -> bool {
        self.seen_nonzero
    }

    pub fn last_rot(&self) -> Option<u32> {
        self.seen_nonzero.then_some(self.last_rot)
    }

    pub fn last_position_odd(&self) -> Option<bool> {
        self.seen_nonzero.then_some(self.pos_odd)
    }

    pub fn count_odd(&self) -> bool {
        self.count_odd
    }

    pub fn position(&self) -> usize {
        self.position
    }

    /// Direction of the next non-zero digit, once one has been seen.
    fn step(&self, c: Condition) -> Option<Step> {
        if !self.seen_nonzero {
            return None;
        }
        let forward = match c {
            Condition::Grc => true,
            Condition::Src => self.pos_odd,
            Condition::Ac => self.count_odd,
        };
        Some(if forward {
            Step::Forward
        } else {
            Step::Backward
        })
    }

    /// The single non-zero digit allowed next, or `None` if any is allowed.
    fn forced_rot(&self, c: Condition, a: RationalAngle) -> Option<u32> {
        self.step(c).map(|dir| rot_step(self.last_rot, dir, a))
    }

    fn consume(&self, d: Digit) -> Self {
        let mut next = *self;
        next.position += 1;
        if let Digit::Rot(k) = d {
            next.seen_nonzero = true;
            next.last_rot = k;
            next.pos_odd = next.position % 2 == 1;
            next.count_odd = !self.count_odd;
        }
        next
    }
}

/// Digits allowed after state `s`, in canonical order (zero first).
pub fn next_allowed(c: Condition, s: &AutomatonState, a: RationalAngle) -> Vec<Digit> {
    match s.forced_rot(c, a) {
        Some(k) => vec![Digit::Zero, Digit::Rot(k)],
        None => std::iter::once(Digit::Zero)
            .chain((0..a.den()).map(Digit::Rot))
            .collect(),
    }
}

fn allows(c: Condition, s: &AutomatonState, d: Digit, a: RationalAngle) -> bool {
    match d {
        Digit::Zero => true,
        Digit::Rot(k) if k >= a.den() => false,
        Digit::Rot(k) => s.forced_rot(c, a).is_none_or(|f| f == k),
    }
}

pub fn advance(
    c: Condition,
    s: &AutomatonState,
    d: Digit,
    a: RationalAngle,
) -> Result<AutomatonState> {
    if !allows(c, s, d, a) {
        return Err(Error::ConditionViolation {
            condition: c.name(),
            position: s.position + 1,
            digit: d.to_string(),
        });
    }
    Ok(s.consume(d))
}

/// A finite digit string; `digits()[0]` is δ₁.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitString {
    angle: RationalAngle,
    digits: Vec<Digit>,
}

impl DigitString {
    pub fn new(angle: RationalAngle, digits: Vec<Digit>) -> Result<Self> {
        if let Some(bad) = digits
            .iter()
            .find(|d| d.rot_index().is_some_and(|k| k >= angle.den()))
        {
            return Err(Error::invalid(format!(
                "digit {bad} out of range for angle {angle}"
            )));
        }
        Ok(DigitString { angle, digits })
    }

    pub fn zeros(angle: RationalAngle, n: usize) -> Self {
        DigitString {
            angle,
            digits: vec![Digit::Zero; n],
        }
    }

    pub fn parse(angle: RationalAngle, s: &str) -> Result<Self> {
        let s = s.trim();
        let digits = if s.is_empty() {
            Vec::new()
        } else {
            s.split(',').map(str::parse).collect::<Result<Vec<_>>>()?
        };
        DigitString::new(angle, digits)
    }

    pub fn angle(&self) -> RationalAngle {
        self.angle
    }

    pub fn digits(&self) -> &[Digit] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn first_nonzero(&self) -> Option<u32> {
        self.digits.iter().find_map(Digit::rot_index)
    }

    /// Digit-wise complex conjugate, re-expressed over the angle −θ.
    ///
    /// conj(e^{ikθ}) = e^{-ikθ} = e^{ik(−θ)}, so the indices are unchanged
    /// when the angle is negated.
    pub fn conj_angle(&self) -> DigitString {
        DigitString {
            angle: self.angle.negated(),
            digits: self.digits.clone(),
        }
    }

    /// Multiplies every non-zero digit by e^{ilθ}.
    pub fn rotated(&self, l: u32) -> DigitString {
        DigitString {
            angle: self.angle,
            digits: self
                .digits
                .iter()
                .map(|d| d.rotate(l, self.angle))
                .collect(),
        }
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Runs the automaton over `digits`; returns the final state if all are allowed.
pub fn run(c: Condition, a: RationalAngle, digits: &[Digit]) -> Result<AutomatonState> {
    digits
        .iter()
        .try_fold(AutomatonState::start(), |s, &d| advance(c, &s, d, a))
}

pub fn is_valid(c: Condition, w: &DigitString) -> bool {
    run(c, w.angle, &w.digits).is_ok()
}

/// Streams every valid string of length `n` in lexicographic order
/// (Zero < Rot(0) < … < Rot(p−1)).
///
/// When `first_nonzero` is set, the first non-zero digit is restricted to it.
pub fn enumerate(
    c: Condition,
    a: RationalAngle,
    n: usize,
    first_nonzero: Option<u32>,
) -> Enumeration {
    Enumeration::from_prefix(c, a, &[], n, first_nonzero).expect("empty prefix is always valid")
}

/// Depth-first iterator over the valid completions of a fixed prefix.
#[derive(Debug, Clone)]
pub struct Enumeration {
    cond: Condition,
    angle: RationalAngle,
    len: usize,
    first_nonzero: Option<u32>,
    floor: usize,
    digits: Vec<Digit>,
    states: Vec<AutomatonState>,
    cursor: Vec<u32>,
    done: bool,
}

impl Enumeration {
    /// Completions of `prefix` to length `n`. Useful for splitting the
    /// enumeration into independent subtrees.
    pub fn from_prefix(
        c: Condition,
        a: RationalAngle,
        prefix: &[Digit],
        n: usize,
        first_nonzero: Option<u32>,
    ) -> Result<Self> {
        if let Some(f) = first_nonzero {
            if f >= a.den() {
                return Err(Error::invalid(format!(
                    "first non-zero index {f} out of range for angle {a}"
                )));
            }
        }
        if prefix.len() > n {
            return Err(Error::invalid("prefix longer than target length"));
        }
        let mut states = Vec::with_capacity(n + 1);
        states.push(AutomatonState::start());
        for &d in prefix {
            let s = states.last().expect("non-empty");
            if !s.seen_nonzero() {
                if let (Some(f), Digit::Rot(k)) = (first_nonzero, d) {
                    if k != f {
                        return Err(Error::invalid("prefix violates first non-zero digit"));
                    }
                }
            }
            let next = advance(c, s, d, a)?;
            states.push(next);
        }
        Ok(Enumeration {
            cond: c,
            angle: a,
            len: n,
            first_nonzero,
            floor: prefix.len(),
            digits: prefix.to_vec(),
            states,
            cursor: vec![0; n + 1],
            done: false,
        })
    }

    /// The `idx`-th allowed digit after state `s`, in canonical order.
    fn option(&self, s: &AutomatonState, idx: u32) -> Option<Digit> {
        if idx == 0 {
            return Some(Digit::Zero);
        }
        match (s.forced_rot(self.cond, self.angle), self.first_nonzero) {
            (Some(k), _) | (None, Some(k)) => (idx == 1).then_some(Digit::Rot(k)),
            (None, None) => (idx <= self.angle.den()).then(|| Digit::Rot(idx - 1)),
        }
    }

    fn backtrack(&mut self) -> bool {
        if self.digits.len() <= self.floor {
            return false;
        }
        self.digits.pop();
        self.states.pop();
        true
    }
}

impl Iterator for Enumeration {
    type Item = DigitString;

    fn next(&mut self) -> Option<DigitString> {
        loop {
            if self.done {
                return None;
            }
            let depth = self.digits.len();
            if depth == self.len {
                let out = DigitString {
                    angle: self.angle,
                    digits: self.digits.clone(),
                };
                if !self.backtrack() {
                    self.done = true;
                }
                return Some(out);
            }
            let s = self.states[depth];
            match self.option(&s, self.cursor[depth]) {
                Some(d) => {
                    self.cursor[depth] += 1;
                    self.cursor[depth + 1] = 0;
                    self.digits.push(d);
                    self.states.push(s.consume(d));
                }
                None => {
                    if !self.backtrack() {
                        self.done = true;
                    }
                }
            }
        }
    }
}
