//! The measurement calculus as a rewrite system on command sequences.
//!
//! Rules are written here in execution order (left runs first):
//!
//! | rule  | redex                  | contractum                     |
//! |-------|------------------------|--------------------------------|
//! | EX    | `X_i^s E_ij`           | `E_ij X_i^s Z_j^s`             |
//! | EZ    | `Z_i^s E_ij`           | `E_ij Z_i^s`                   |
//! | MX    | `X_i^r M_i^α[s,t]`     | `M_i^α[s+r,t]`                 |
//! | MZ    | `Z_i^r M_i^α[s,t]`     | `M_i^α[s,t+r]`                 |
//! | FREE_E| `A_k E_ij` (A ≠ E)     | `E_ij A_k`                     |
//! | FREE_X| `X_i A_k` (A ∉ {X,Z}) | `A_k X_i`                      |
//! | FREE_Z| `Z_i A_k` (A ∉ {X,Z}) | `A_k Z_i`                      |
//!
//! Free rules need disjoint qubits. The shifting extension adds
//! `M_i^α[s,t] → M_i^α[s] S_i^t`, moves `S_i^t` rightwards past
//! measurements and corrections while substituting `s_i ↦ s_i + t` in
//! their signals, and drops a shift once it is last.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::command::{Command, Measure};
use crate::error::RewriteError;
use crate::notation;
use crate::pattern::Pattern;
use crate::signal::Signal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    EX,
    EZ,
    MX,
    MZ,
    FreeE,
    FreeX,
    FreeZ,
    ShiftSplit,
    ShiftX,
    ShiftZ,
    ShiftM,
    ShiftDrop,
}

impl Rule {
    pub const CORE: [Rule; 7] = [
        Rule::EX,
        Rule::EZ,
        Rule::MX,
        Rule::MZ,
        Rule::FreeE,
        Rule::FreeX,
        Rule::FreeZ,
    ];

    pub fn is_shift(self) -> bool {
        !Rule::CORE.contains(&self)
    }

    pub fn name(self) -> &'static str {
        match self {
            Rule::EX => "EX",
            Rule::EZ => "EZ",
            Rule::MX => "MX",
            Rule::MZ => "MZ",
            Rule::FreeE => "FREE_E",
            Rule::FreeX => "FREE_X",
            Rule::FreeZ => "FREE_Z",
            Rule::ShiftSplit => "SHIFT_SPLIT",
            Rule::ShiftX => "SHIFT_X",
            Rule::ShiftZ => "SHIFT_Z",
            Rule::ShiftM => "SHIFT_M",
            Rule::ShiftDrop => "SHIFT_DROP",
        }
    }

    /// Commands consumed by the left-hand side.
    fn width(self) -> usize {
        match self {
            Rule::ShiftSplit | Rule::ShiftDrop => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which rule set to match against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Core,
    Extended,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Redex {
    pub rule: Rule,
    pub position: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RewriteStep {
    pub rule: Rule,
    pub position: usize,
    pub before: Vec<Command>,
    pub after: Vec<Command>,
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let after = if self.after.is_empty() {
            "·".to_string()
        } else {
            notation::sequence(&self.after)
        };
        write!(
            f,
            "{} @ {}: {} => {}",
            self.rule,
            self.position,
            notation::sequence(&self.before),
            after
        )
    }
}

pub type Trace = Vec<RewriteStep>;

/// One step per line, `<rule> @ <position>: <before> => <after>`.
pub fn format_trace(trace: &[RewriteStep]) -> String {
    trace.iter().map(|s| format!("{s}\n")).collect()
}

fn pair_rules(a: &Command, b: &Command, out: &mut Vec<Rule>) {
    use Command::*;
    match (a, b) {
        (X(i, _), E(p, q)) if i == p || i == q => out.push(Rule::EX),
        (Z(i, _), E(p, q)) if i == p || i == q => out.push(Rule::EZ),
        (X(i, _), M(m)) if *i == m.qubit => out.push(Rule::MX),
        (Z(i, _), M(m)) if *i == m.qubit => out.push(Rule::MZ),
        (S(..), X(..)) => out.push(Rule::ShiftX),
        (S(..), Z(..)) => out.push(Rule::ShiftZ),
        (S(..), M(_)) => out.push(Rule::ShiftM),
        _ => {
            if matches!(a, S(..)) || matches!(b, S(..)) || !a.disjoint_from(b) {
                return;
            }
            if matches!(b, E(..)) && !matches!(a, E(..)) {
                out.push(Rule::FreeE);
            }
            if !b.is_correction() {
                match a {
                    X(..) => out.push(Rule::FreeX),
                    Z(..) => out.push(Rule::FreeZ),
                    _ => {}
                }
            }
        }
    }
}

fn single_rules(commands: &[Command], position: usize, out: &mut Vec<Rule>) {
    match &commands[position] {
        Command::M(m) if !m.t.is_zero() => out.push(Rule::ShiftSplit),
        Command::S(..) if position + 1 == commands.len() => out.push(Rule::ShiftDrop),
        _ => {}
    }
}

fn rules_at(commands: &[Command], position: usize, mode: Mode) -> Vec<Rule> {
    let mut rules = Vec::new();
    if position + 1 < commands.len() {
        pair_rules(&commands[position], &commands[position + 1], &mut rules);
    }
    single_rules(commands, position, &mut rules);
    if mode == Mode::Core {
        rules.retain(|r| !r.is_shift());
    }
    rules.sort();
    rules
}

/// Every rule instance matching somewhere in the sequence.
pub fn applicable_redexes(p: &Pattern, mode: Mode) -> Vec<Redex> {
    redexes_in(p.commands(), mode)
}

fn redexes_in(commands: &[Command], mode: Mode) -> Vec<Redex> {
    (0..commands.len())
        .flat_map(|position| {
            rules_at(commands, position, mode)
                .into_iter()
                .map(move |rule| Redex { rule, position })
        })
        .collect()
}

/// Contractum for `rule` at `position`, or `None` when it does not match.
fn contract(commands: &[Command], rule: Rule, position: usize) -> Option<Vec<Command>> {
    use Command::*;
    if position + rule.width() > commands.len() || !rules_at(commands, position, Mode::Extended).contains(&rule) {
        return None;
    }
    let a = &commands[position];
    let b = commands.get(position + 1);
    let out = match (rule, a, b) {
        (Rule::EX, X(i, s), Some(e @ E(p, q))) => {
            let j = if i == p { q } else { p };
            vec![e.clone(), X(i.clone(), s.clone()), Z(j.clone(), s.clone())]
        }
        (Rule::EZ, Z(i, s), Some(e @ E(..))) => vec![e.clone(), Z(i.clone(), s.clone())],
        (Rule::MX, X(_, r), Some(M(m))) => {
            vec![M(Measure::new(m.qubit.clone(), m.angle, m.s.clone() + r, m.t.clone()))]
        }
        (Rule::MZ, Z(_, r), Some(M(m))) => {
            vec![M(Measure::new(m.qubit.clone(), m.angle, m.s.clone(), m.t.clone() + r))]
        }
        (Rule::FreeE | Rule::FreeX | Rule::FreeZ, a, Some(b)) => vec![b.clone(), a.clone()],
        (Rule::ShiftSplit, M(m), _) => vec![
            M(Measure::new(m.qubit.clone(), m.angle, m.s.clone(), Signal::zero())),
            S(m.qubit.clone(), m.t.clone()),
        ],
        (Rule::ShiftX, sh @ S(i, t), Some(X(j, s))) => vec![X(j.clone(), s.substitute(i, t)), sh.clone()],
        (Rule::ShiftZ, sh @ S(i, t), Some(Z(j, s))) => vec![Z(j.clone(), s.substitute(i, t)), sh.clone()],
        (Rule::ShiftM, sh @ S(i, r), Some(M(m))) => vec![
            M(Measure::new(
                m.qubit.clone(),
                m.angle,
                m.s.substitute(i, r),
                m.t.substitute(i, r),
            )),
            sh.clone(),
        ],
        (Rule::ShiftDrop, S(..), _) => vec![],
        _ => return None,
    };
    Some(out)
}

/// Rewrites in place and returns the recorded step.
fn rewrite_in_place(commands: &mut Vec<Command>, rule: Rule, position: usize) -> Option<RewriteStep> {
    let after = contract(commands, rule, position)?;
    let before: Vec<Command> = commands
        .splice(position..position + rule.width(), after.iter().cloned())
        .collect();
    Some(RewriteStep {
        rule,
        position,
        before,
        after,
    })
}

/// One rewrite step. Space, inputs and outputs are unchanged.
pub fn apply_rule(p: &Pattern, rule: Rule, position: usize) -> Result<Pattern, RewriteError> {
    let mut commands = p.commands().to_vec();
    rewrite_in_place(&mut commands, rule, position).ok_or(RewriteError::NoMatch { rule, position })?;
    Ok(p.with_commands(commands))
}

/// Replays a trace from `source`, checking every recorded window.
pub fn replay(source: &Pattern, trace: &[RewriteStep]) -> Result<Pattern, RewriteError> {
    let mut commands = source.commands().to_vec();
    for step in trace {
        let done = rewrite_in_place(&mut commands, step.rule, step.position);
        match done {
            Some(s) if s.before == step.before && s.after == step.after => {}
            _ => {
                return Err(RewriteError::NoMatch {
                    rule: step.rule,
                    position: step.position,
                })
            }
        }
    }
    Ok(source.with_commands(commands))
}

/// Upper bound on rewrite steps before the standardizer reports an internal
/// error. Corrections duplicate through entanglements, so the worst case is
/// cubic in the sequence length.
pub fn step_ceiling(n: usize) -> usize {
    16 * n * n * (n + 1) + 64
}

/// Leftmost redex at or after `from`, ties broken by rule priority.
fn first_redex(commands: &[Command], from: usize, mode: Mode) -> Option<Redex> {
    (from..commands.len()).find_map(|position| {
        rules_at(commands, position, mode)
            .first()
            .map(|&rule| Redex { rule, position })
    })
}

fn core_standardize(commands: &mut Vec<Command>, trace: &mut Trace) -> Result<(), RewriteError> {
    let limit = step_ceiling(commands.len());
    let mut from = 0;
    let mut steps = 0usize;
    while let Some(redex) = first_redex(commands, from, Mode::Core) {
        let step = rewrite_in_place(commands, redex.rule, redex.position).expect("redex matches");
        trace.push(step);
        steps += 1;
        if steps > limit {
            return Err(RewriteError::StepLimit { limit });
        }
        // windows left of position-1 are untouched and were not redexes
        from = redex.position.saturating_sub(1);
    }
    Ok(())
}

/// Rewrites to the unique core standard form, which satisfies EMC.
///
/// The strategy always contracts the leftmost redex; free commutations only
/// move entanglements left and corrections right.
pub fn standardize(p: &Pattern) -> Result<(Pattern, Trace), RewriteError> {
    p.validate().into_result()?;
    let mut commands = p.commands().to_vec();
    let mut trace = Vec::new();
    core_standardize(&mut commands, &mut trace)?;
    Ok((p.with_commands(commands), trace))
}

/// Pushes the shift sitting at `position` to the end and drops it.
fn flush_shift(commands: &mut Vec<Command>, mut position: usize, trace: &mut Trace) {
    while position + 1 < commands.len() {
        let rule = match &commands[position + 1] {
            Command::M(_) => Rule::ShiftM,
            Command::X(..) => Rule::ShiftX,
            Command::Z(..) => Rule::ShiftZ,
            // a later shift is flushed before this one
            Command::S(..) => {
                flush_shift(commands, position + 1, trace);
                continue;
            }
            Command::E(..) => unreachable!("shift never precedes an entanglement in EMC form"),
        };
        trace.push(rewrite_in_place(commands, rule, position).expect("shift rule matches"));
        position += 1;
    }
    trace.push(rewrite_in_place(commands, Rule::ShiftDrop, position).expect("trailing shift"));
}

fn fold_z_actions(commands: &mut Vec<Command>, trace: &mut Trace) {
    let mut k = 0;
    while k < commands.len() {
        match &commands[k] {
            Command::M(m) if !m.t.is_zero() => {
                trace.push(rewrite_in_place(commands, Rule::ShiftSplit, k).expect("split matches"));
                flush_shift(commands, k + 1, trace);
            }
            Command::S(..) => flush_shift(commands, k, trace),
            _ => k += 1,
        }
    }
}

/// Core standardization followed by signal shifting: every Z-action
/// dependency of a measurement is split off and pushed into the
/// corrections.
pub fn standardize_extended(p: &Pattern) -> Result<(Pattern, Trace), RewriteError> {
    let (standard, mut trace) = standardize(p)?;
    let mut commands = standard.commands().to_vec();
    fold_z_actions(&mut commands, &mut trace);
    Ok((p.with_commands(commands), trace))
}

/// Shifts an EMC-form sequence; used by the Pauli elimination which first
/// splits measurements itself.
pub(crate) fn flush_all_shifts(commands: &mut Vec<Command>, trace: &mut Trace) {
    fold_z_actions(commands, trace);
}

pub fn is_standard(p: &Pattern) -> bool {
    redexes_in(p.commands(), Mode::Core).is_empty()
}

pub fn is_emc(p: &Pattern) -> bool {
    p.is_emc()
}

/// Applies uniformly random core redexes until none is left.
pub fn random_order_standardize(p: &Pattern, seed: u64) -> Result<Pattern, RewriteError> {
    p.validate().into_result()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut commands = p.commands().to_vec();
    let limit = step_ceiling(commands.len());
    for _ in 0..=limit {
        let redexes = redexes_in(&commands, Mode::Core);
        let Some(redex) = redexes.choose(&mut rng) else {
            return Ok(p.with_commands(commands));
        };
        rewrite_in_place(&mut commands, redex.rule, redex.position).expect("redex matches");
    }
    Err(RewriteError::StepLimit { limit })
}

/// `(Σ_E d(E), Σ_C d(C))` with `d(E) = p` and `d(C) = n − p` for a command
/// at 1-based execution position `p` in a sequence of length `n`.
/// Compared lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TerminationMeasure {
    pub e_sum: u64,
    pub c_sum: u64,
}

pub fn termination_measure(p: &Pattern) -> TerminationMeasure {
    measure_of(p.commands())
}

pub fn measure_of(commands: &[Command]) -> TerminationMeasure {
    let n = commands.len() as u64;
    let mut m = TerminationMeasure { e_sum: 0, c_sum: 0 };
    for (k, c) in commands.iter().enumerate() {
        let pos = k as u64 + 1;
        match c {
            Command::E(..) => m.e_sum += pos,
            Command::X(..) | Command::Z(..) => m.c_sum += n - pos,
            _ => {}
        }
    }
    m
}

/// A lexicographic measure that decreases on every core step, including
/// entanglement moves that shift later entanglements to the right.
///
/// * `correction_weight`: Σ over corrections of `w²` for X and `w` for Z,
///   where `w` counts entanglements after the correction.
/// * `entangle_delay`: Σ over entanglements of the measurements before it.
/// * `correction_delay`: Σ over corrections of the non-corrections after it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightedMeasure {
    pub correction_weight: u64,
    pub entangle_delay: u64,
    pub correction_delay: u64,
}

pub fn weighted_measure(commands: &[Command]) -> WeightedMeasure {
    let mut m = WeightedMeasure {
        correction_weight: 0,
        entangle_delay: 0,
        correction_delay: 0,
    };
    let mut measurements_seen = 0u64;
    for c in commands {
        match c {
            Command::M(_) => measurements_seen += 1,
            Command::E(..) => m.entangle_delay += measurements_seen,
            _ => {}
        }
    }
    let mut e_after = 0u64;
    let mut non_c_after = 0u64;
    for c in commands.iter().rev() {
        match c {
            Command::E(..) => {
                e_after += 1;
                non_c_after += 1;
            }
            Command::M(_) => non_c_after += 1,
            Command::X(..) => {
                m.correction_weight += e_after * e_after;
                m.correction_delay += non_c_after;
            }
            Command::Z(..) => {
                m.correction_weight += e_after;
                m.correction_delay += non_c_after;
            }
            Command::S(..) => {}
        }
    }
    m
}
