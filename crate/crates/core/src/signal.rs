//! Signals: Z₂ sums of measurement outcomes plus a constant bit.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign};

use crate::error::SimError;
use crate::qubit::QubitId;

/// Outcome map Γ: measured qubit ↦ outcome bit.
pub type OutcomeMap = BTreeMap<QubitId, bool>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Signal {
    constant: bool,
    support: BTreeSet<QubitId>,
}

impl Signal {
    /// The zero signal.
    pub fn zero() -> Self {
        Signal::default()
    }

    pub fn one() -> Self {
        Signal {
            constant: true,
            support: BTreeSet::new(),
        }
    }

    /// `s_q`, the outcome of a single qubit.
    pub fn outcome(q: impl Into<QubitId>) -> Self {
        let mut support = BTreeSet::new();
        support.insert(q.into());
        Signal {
            constant: false,
            support,
        }
    }

    pub fn sum<I, Q>(constant: bool, qubits: I) -> Self
    where
        I: IntoIterator<Item = Q>,
        Q: Into<QubitId>,
    {
        let mut s = Signal {
            constant,
            support: BTreeSet::new(),
        };
        for q in qubits {
            s.toggle(q.into());
        }
        s
    }

    pub fn constant(&self) -> bool {
        self.constant
    }

    pub fn support(&self) -> &BTreeSet<QubitId> {
        &self.support
    }

    pub fn is_zero(&self) -> bool {
        !self.constant && self.support.is_empty()
    }

    /// True when the signal reads no outcome at all.
    pub fn is_constant(&self) -> bool {
        self.support.is_empty()
    }

    pub fn contains(&self, q: &QubitId) -> bool {
        self.support.contains(q)
    }

    pub fn toggle(&mut self, q: QubitId) {
        if !self.support.remove(&q) {
            self.support.insert(q);
        }
    }

    /// Splits off the constant bit, leaving a pure outcome sum.
    pub fn take_constant(&mut self) -> bool {
        std::mem::replace(&mut self.constant, false)
    }

    pub fn eval(&self, outcomes: &OutcomeMap) -> Result<bool, SimError> {
        self.support
            .iter()
            .try_fold(self.constant, |acc, q| match outcomes.get(q) {
                Some(&b) => Ok(acc ^ b),
                None => Err(SimError::MissingOutcome(q.clone())),
            })
    }

    /// `s[t + s_i / s_i]`: every occurrence of `s_i` becomes `t + s_i`.
    pub fn substitute(&self, i: &QubitId, t: &Signal) -> Signal {
        if self.contains(i) {
            self.clone() + t
        } else {
            self.clone()
        }
    }

    pub fn map_qubits(&self, f: impl Fn(&QubitId) -> QubitId) -> Signal {
        Signal::sum(self.constant, self.support.iter().map(f))
    }
}

impl AddAssign<&Signal> for Signal {
    // addition over Z₂
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: &Signal) {
        self.constant ^= rhs.constant;
        for q in &rhs.support {
            self.toggle(q.clone());
        }
    }
}

impl Add<&Signal> for Signal {
    type Output = Signal;

    fn add(mut self, rhs: &Signal) -> Signal {
        self += rhs;
        self
    }
}

impl Add for Signal {
    type Output = Signal;

    fn add(self, rhs: Signal) -> Signal {
        self + &rhs
    }
}

/// `1 + s[1] + s[2']`, `s[3]`, `0`.
impl fmt::Display for Signal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        if self.constant {
            f.write_str("1")?;
            first = false;
        }
        for q in &self.support {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "s[{q}]")?;
            first = false;
        }
        Ok(())
    }
}
