//! Measurement patterns and the ways of combining them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::command::{Command, CommandKind};
use crate::error::PatternError;
use crate::qubit::QubitId;

/// A computation space `V`, ordered inputs and outputs (subsets of `V`, may
/// overlap) and a command sequence in execution order: `commands[0]` runs
/// first. Non-inputs are prepared in `|+⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct Pattern {
    space: BTreeSet<QubitId>,
    inputs: Vec<QubitId>,
    outputs: Vec<QubitId>,
    commands: Vec<Command>,
}

/// A broken definiteness condition, with the offending command if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub index: Option<usize>,
    pub qubit: QubitId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityReport {
    /// No command depends on an outcome not yet measured.
    pub d0: Option<Violation>,
    /// No command acts on an already measured qubit.
    pub d1: Option<Violation>,
    /// Exactly the non-outputs get measured.
    pub d2: Option<Violation>,
    pub emc: bool,
}

impl ValidityReport {
    pub fn is_runnable(&self) -> bool {
        self.d0.is_none() && self.d1.is_none() && self.d2.is_none()
    }

    pub fn into_result(self) -> Result<(), PatternError> {
        if self.is_runnable() {
            Ok(())
        } else {
            Err(PatternError::Invalid(self.to_string()))
        }
    }
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let line = |f: &mut fmt::Formatter<'_>, name: &str, v: &Option<Violation>, what: &str| match v {
            None => writeln!(f, "{name}: pass"),
            Some(Violation { index: Some(i), qubit }) => {
                writeln!(f, "{name}: FAIL at command {i} ({what} {qubit})")
            }
            Some(Violation { index: None, qubit }) => writeln!(f, "{name}: FAIL ({what} {qubit})"),
        };
        line(f, "D0", &self.d0, "outcome not yet measured:")?;
        line(f, "D1", &self.d1, "qubit already measured:")?;
        line(f, "D2", &self.d2, "measured iff non-output violated on")?;
        write!(f, "EMC: {}", if self.emc { "pass" } else { "FAIL" })
    }
}

fn check_distinct(list: &[QubitId], what: &'static str) -> Result<(), PatternError> {
    let mut seen = BTreeSet::new();
    for q in list {
        if !seen.insert(q) {
            return Err(PatternError::Duplicate(q.clone(), what));
        }
    }
    Ok(())
}

impl Pattern {
    /// Builds a pattern, checking that every qubit mentioned lives in `space`.
    /// Runnability is checked separately by [`Pattern::validate`].
    pub fn new(
        space: impl IntoIterator<Item = QubitId>,
        inputs: Vec<QubitId>,
        outputs: Vec<QubitId>,
        commands: Vec<Command>,
    ) -> Result<Pattern, PatternError> {
        let space: BTreeSet<QubitId> = space.into_iter().collect();
        check_distinct(&inputs, "inputs")?;
        check_distinct(&outputs, "outputs")?;
        let not_in = |q: &QubitId, context: String| PatternError::NotInSpace {
            qubit: q.clone(),
            context,
        };
        for q in &inputs {
            if !space.contains(q) {
                return Err(not_in(q, "inputs".into()));
            }
        }
        for q in &outputs {
            if !space.contains(q) {
                return Err(not_in(q, "outputs".into()));
            }
        }
        for (k, c) in commands.iter().enumerate() {
            if let Command::E(i, j) = c {
                if i == j {
                    return Err(PatternError::SelfEntangle(i.clone()));
                }
            }
            for q in c.qubits().into_iter().chain(c.dependencies()) {
                if !space.contains(q) {
                    return Err(not_in(q, format!("command {k} ({c})")));
                }
            }
        }
        Ok(Pattern {
            space,
            inputs,
            outputs,
            commands,
        })
    }

    /// Empty pattern on no qubits.
    pub fn empty() -> Pattern {
        Pattern {
            space: BTreeSet::new(),
            inputs: vec![],
            outputs: vec![],
            commands: vec![],
        }
    }

    pub fn space(&self) -> &BTreeSet<QubitId> {
        &self.space
    }

    pub fn inputs(&self) -> &[QubitId] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[QubitId] {
        &self.outputs
    }

    pub fn commands(&self) -> &[Command] {
        &self.commands
    }

    pub fn len(&self) -> usize {
        self.commands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.commands.is_empty()
    }

    /// Same space and interface, different commands. Used by the rewriter,
    /// which never introduces new qubits.
    pub(crate) fn with_commands(&self, commands: Vec<Command>) -> Pattern {
        Pattern {
            space: self.space.clone(),
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
            commands,
        }
    }

    /// Qubits prepared in `|+⟩`: `V \ I`.
    pub fn prepared(&self) -> Vec<QubitId> {
        self.space
            .iter()
            .filter(|q| !self.inputs.contains(q))
            .cloned()
            .collect()
    }

    pub fn measured(&self) -> Vec<&QubitId> {
        self.commands
            .iter()
            .filter_map(|c| match c {
                Command::M(m) => Some(&m.qubit),
                _ => None,
            })
            .collect()
    }

    pub fn validate(&self) -> ValidityReport {
        let mut measured: BTreeSet<&QubitId> = BTreeSet::new();
        let mut d0 = None;
        let mut d1 = None;
        for (k, c) in self.commands.iter().enumerate() {
            if d0.is_none() {
                if let Some(q) = c.dependencies().into_iter().find(|q| !measured.contains(q)) {
                    d0 = Some(Violation {
                        index: Some(k),
                        qubit: q.clone(),
                    });
                }
            }
            if d1.is_none() {
                if let Some(q) = c.qubits().into_iter().find(|q| measured.contains(q)) {
                    d1 = Some(Violation {
                        index: Some(k),
                        qubit: q.clone(),
                    });
                }
            }
            if let Command::M(m) = c {
                measured.insert(&m.qubit);
            }
        }
        let outputs: BTreeSet<&QubitId> = self.outputs.iter().collect();
        let d2 = self
            .space
            .iter()
            .find(|q| measured.contains(q) == outputs.contains(q))
            .map(|q| Violation {
                index: None,
                qubit: q.clone(),
            });
        ValidityReport {
            d0,
            d1,
            d2,
            emc: self.is_emc(),
        }
    }

    /// Entanglements first, then measurements, then corrections.
    pub fn is_emc(&self) -> bool {
        let rank = |c: &Command| match c.kind() {
            CommandKind::E => 0,
            CommandKind::M => 1,
            CommandKind::X | CommandKind::Z | CommandKind::S => 2,
        };
        self.commands.windows(2).all(|w| rank(&w[0]) <= rank(&w[1]))
    }

    /// `self ∘ first`: runs `first`, then `self`. Requires
    /// `V₁ ∩ V₂ = O₁ = I₂` as sets.
    pub fn compose(&self, first: &Pattern) -> Result<Pattern, PatternError> {
        let shared: BTreeSet<&QubitId> = self.space.intersection(&first.space).collect();
        let outs: BTreeSet<&QubitId> = first.outputs.iter().collect();
        let ins: BTreeSet<&QubitId> = self.inputs.iter().collect();
        if shared != outs || outs != ins {
            return Err(PatternError::InterfaceMismatch {
                shared: shared.into_iter().cloned().collect(),
                outputs: first.outputs.clone(),
                inputs: self.inputs.clone(),
            });
        }
        let mut commands = first.commands.clone();
        commands.extend(self.commands.iter().cloned());
        Ok(Pattern {
            space: self.space.union(&first.space).cloned().collect(),
            inputs: first.inputs.clone(),
            outputs: self.outputs.clone(),
            commands,
        })
    }

    /// Parallel combination; inputs and outputs of `self` come first.
    pub fn tensor(&self, other: &Pattern) -> Result<Pattern, PatternError> {
        if let Some(q) = self.space.intersection(&other.space).next() {
            return Err(PatternError::Overlap(q.clone()));
        }
        let cat = |a: &[QubitId], b: &[QubitId]| a.iter().chain(b).cloned().collect::<Vec<_>>();
        Ok(Pattern {
            space: self.space.union(&other.space).cloned().collect(),
            inputs: cat(&self.inputs, &other.inputs),
            outputs: cat(&self.outputs, &other.outputs),
            commands: cat_commands(&self.commands, &other.commands),
        })
    }

    /// Renames every qubit occurrence through `map`, which must be defined
    /// and injective on the computation space.
    pub fn rename(&self, map: &BTreeMap<QubitId, QubitId>) -> Result<Pattern, PatternError> {
        let mut inverse: BTreeMap<&QubitId, &QubitId> = BTreeMap::new();
        for q in &self.space {
            let image = map.get(q).ok_or_else(|| PatternError::PartialMap(q.clone()))?;
            if let Some(prev) = inverse.insert(image, q) {
                return Err(PatternError::NotInjective(prev.clone(), q.clone(), image.clone()));
            }
        }
        let f = |q: &QubitId| map[q].clone();
        let commands = self
            .commands
            .iter()
            .map(|c| c.map_qubits(f))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Pattern {
            space: self.space.iter().map(f).collect(),
            inputs: self.inputs.iter().map(f).collect(),
            outputs: self.outputs.iter().map(f).collect(),
            commands,
        })
    }

    /// `P(f(1), …, f(n))`: renames the space, taken in ascending order, onto
    /// `labels`.
    pub fn place<Q: Into<QubitId> + Clone>(&self, labels: &[Q]) -> Result<Pattern, PatternError> {
        if labels.len() != self.space.len() {
            return Err(PatternError::Argument(format!(
                "pattern has {} qubits, {} labels given",
                self.space.len(),
                labels.len()
            )));
        }
        let map = self
            .space
            .iter()
            .cloned()
            .zip(labels.iter().cloned().map(Into::into))
            .collect();
        self.rename(&map)
    }

    /// Number of qubits in the computation space.
    pub fn width(&self) -> usize {
        self.space.len()
    }
}

fn cat_commands(a: &[Command], b: &[Command]) -> Vec<Command> {
    a.iter().chain(b).cloned().collect()
}
