use std::fmt;

use crate::angle::Angle;
use crate::error::PatternError;
use crate::qubit::QubitId;
use crate::signal::Signal;

/// A dependent measurement `M_i^α[s, t]`, i.e. a measurement at angle
/// `(−1)^s·α + t·π` in the xy-plane.
///
/// Stored signals never carry a constant: `M^α[1+s, t]` is kept as
/// `M^{−α}[s, t]` and `M^α[s, 1+t]` as `M^{α+π}[s, t]`. For exact angles
/// 0 and π the X-action is trivial, so `s` is dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct Measure {
    pub qubit: QubitId,
    pub angle: Angle,
    pub s: Signal,
    pub t: Signal,
}

impl Measure {
    pub fn new(qubit: QubitId, angle: Angle, mut s: Signal, mut t: Signal) -> Self {
        let mut angle = angle;
        if s.take_constant() {
            angle = -angle;
        }
        if t.take_constant() {
            angle = angle.add_pi();
        }
        if angle.is_self_conjugate() {
            s = Signal::zero();
        }
        Measure { qubit, angle, s, t }
    }

    /// Effective angle `(−1)^s·α + t·π` for given signal values.
    pub fn effective_angle(&self, s: bool, t: bool) -> Angle {
        let a = if s { -self.angle } else { self.angle };
        if t {
            a.add_pi()
        } else {
            a
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    /// Controlled-Z between two distinct qubits, stored with `i < j`.
    E(QubitId, QubitId),
    M(Measure),
    X(QubitId, Signal),
    Z(QubitId, Signal),
    /// Signal shift: adds the value of the signal to the recorded outcome.
    S(QubitId, Signal),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CommandKind {
    E,
    M,
    X,
    Z,
    S,
}

impl Command {
    pub fn entangle(i: impl Into<QubitId>, j: impl Into<QubitId>) -> Result<Command, PatternError> {
        let (i, j) = (i.into(), j.into());
        match i.cmp(&j) {
            std::cmp::Ordering::Less => Ok(Command::E(i, j)),
            std::cmp::Ordering::Greater => Ok(Command::E(j, i)),
            std::cmp::Ordering::Equal => Err(PatternError::SelfEntangle(i)),
        }
    }

    pub fn measure(q: impl Into<QubitId>, angle: Angle) -> Command {
        Command::M(Measure::new(q.into(), angle, Signal::zero(), Signal::zero()))
    }

    pub fn measure_dep(q: impl Into<QubitId>, angle: Angle, s: Signal, t: Signal) -> Command {
        Command::M(Measure::new(q.into(), angle, s, t))
    }

    pub fn x(q: impl Into<QubitId>, s: Signal) -> Command {
        Command::X(q.into(), s)
    }

    pub fn z(q: impl Into<QubitId>, s: Signal) -> Command {
        Command::Z(q.into(), s)
    }

    pub fn shift(q: impl Into<QubitId>, s: Signal) -> Command {
        Command::S(q.into(), s)
    }

    pub fn kind(&self) -> CommandKind {
        match self {
            Command::E(..) => CommandKind::E,
            Command::M(_) => CommandKind::M,
            Command::X(..) => CommandKind::X,
            Command::Z(..) => CommandKind::Z,
            Command::S(..) => CommandKind::S,
        }
    }

    pub fn is_correction(&self) -> bool {
        matches!(self, Command::X(..) | Command::Z(..))
    }

    /// Qubits the command acts on quantumly. A shift acts on none.
    pub fn qubits(&self) -> Vec<&QubitId> {
        match self {
            Command::E(i, j) => vec![i, j],
            Command::M(m) => vec![&m.qubit],
            Command::X(q, _) | Command::Z(q, _) => vec![q],
            Command::S(..) => vec![],
        }
    }

    pub fn acts_on(&self, q: &QubitId) -> bool {
        self.qubits().contains(&q)
    }

    pub fn disjoint_from(&self, other: &Command) -> bool {
        self.qubits().iter().all(|q| !other.acts_on(q))
    }

    /// Signals the command reads.
    pub fn signals(&self) -> Vec<&Signal> {
        match self {
            Command::E(..) => vec![],
            Command::M(m) => vec![&m.s, &m.t],
            Command::X(_, s) | Command::Z(_, s) | Command::S(_, s) => vec![s],
        }
    }

    /// Outcomes that must be known before the command can run. A shift on
    /// `i` also needs the outcome of `i` itself.
    pub fn dependencies(&self) -> Vec<&QubitId> {
        let mut deps: Vec<&QubitId> = self.signals().into_iter().flat_map(|s| s.support()).collect();
        if let Command::S(q, _) = self {
            deps.push(q);
        }
        deps
    }

    /// Applies `f` to every qubit occurrence, including signal supports.
    pub fn map_qubits(&self, f: impl Fn(&QubitId) -> QubitId) -> Result<Command, PatternError> {
        Ok(match self {
            Command::E(i, j) => Command::entangle(f(i), f(j))?,
            Command::M(m) => Command::M(Measure {
                qubit: f(&m.qubit),
                angle: m.angle,
                s: m.s.map_qubits(&f),
                t: m.t.map_qubits(&f),
            }),
            Command::X(q, s) => Command::X(f(q), s.map_qubits(&f)),
            Command::Z(q, s) => Command::Z(f(q), s.map_qubits(&f)),
            Command::S(q, s) => Command::S(f(q), s.map_qubits(&f)),
        })
    }
}

/// DSL form, e.g. `M(2, 1/4 pi, s=s[1])`.
impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::E(i, j) => write!(f, "E({i},{j})"),
            Command::M(m) => {
                write!(f, "M({}, {}", m.qubit, m.angle)?;
                if !m.s.is_zero() {
                    write!(f, ", s={}", m.s)?;
                }
                if !m.t.is_zero() {
                    write!(f, ", t={}", m.t)?;
                }
                f.write_str(")")
            }
            Command::X(q, s) => write!(f, "X({q}, {s})"),
            Command::Z(q, s) => write!(f, "Z({q}, {s})"),
            Command::S(q, s) => write!(f, "S({q}, {s})"),
        }
    }
}
