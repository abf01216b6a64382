//! The generators `J(α)` and `CZ`, and the composite patterns built from
//! them.
//!
//! Builders return wild patterns, assembled with [`Pattern::compose`],
//! [`Pattern::tensor`] and [`Pattern::place`]; standardize them to get the
//! EMC forms.

use num_complex::Complex;

use crate::angle::{Angle, Rational};
use crate::command::Command;
use crate::error::PatternError;
use crate::matrix::{self, c, CMatrix};
use crate::pattern::Pattern;
use crate::qubit::{qubits, QubitId};
use crate::scalar::Real;
use crate::signal::Signal;

fn build(space: Vec<QubitId>, inputs: Vec<QubitId>, outputs: Vec<QubitId>, commands: Vec<Command>) -> Pattern {
    Pattern::new(space, inputs, outputs, commands).expect("library pattern is well formed")
}

fn e(i: impl Into<QubitId>, j: impl Into<QubitId>) -> Command {
    Command::entangle(i, j).expect("distinct qubits")
}

fn at(p: Pattern, labels: &[QubitId]) -> Pattern {
    p.place(labels).expect("label count matches")
}

fn then(second: &Pattern, first: &Pattern) -> Pattern {
    second.compose(first).expect("library interfaces match")
}

/// `J(α) = X_2^{s_1} M_1^{−α} E_12` on `{1, 2}`, input 1, output 2.
pub fn j(alpha: Angle) -> Pattern {
    build(
        qubits([1, 2]),
        qubits([1]),
        qubits([2]),
        vec![e(1, 2), Command::measure(1, -alpha), Command::x(2, Signal::outcome(1))],
    )
}

/// `E_12` with inputs and outputs `{1, 2}`.
pub fn cz() -> Pattern {
    build(qubits([1, 2]), qubits([1, 2]), qubits([1, 2]), vec![e(1, 2)])
}

pub fn h() -> Pattern {
    j(Angle::zero())
}

/// Empty pattern on one qubit.
pub fn identity(q: impl Into<QubitId>) -> Pattern {
    let q = vec![q.into()];
    build(q.clone(), q.clone(), q, vec![])
}

/// No inputs, one output prepared in `|+⟩`.
pub fn plus(q: impl Into<QubitId>) -> Pattern {
    let q = vec![q.into()];
    build(q.clone(), vec![], q, vec![])
}

/// `J(β)(2,3) ∘ J(α)(1,2)`.
pub fn teleport(alpha: Angle, beta: Angle) -> Pattern {
    then(&at(j(beta), &qubits([2, 3])), &j(alpha))
}

/// `J(α)(2,3) ∘ H(1,2)`, an x-rotation.
pub fn rx(alpha: Angle) -> Pattern {
    then(&at(j(alpha), &qubits([2, 3])), &h())
}

/// `H(2,3) ∘ J(α)(1,2)`, the 3-qubit z-rotation.
pub fn rz(alpha: Angle) -> Pattern {
    then(&at(h(), &qubits([2, 3])), &j(alpha))
}

/// `H(4,5) ∘ Rx(α)(2,3,4) ∘ H(1,2)`, the 5-qubit z-rotation.
pub fn rz5(alpha: Angle) -> Pattern {
    let middle = then(&at(rx(alpha), &qubits([2, 3, 4])), &h());
    then(&at(h(), &qubits([4, 5])), &middle)
}

/// `J(0)(4,5) ∘ J(α)(3,4) ∘ J(β)(2,3) ∘ J(γ)(1,2)`.
pub fn rotation(alpha: Angle, beta: Angle, gamma: Angle) -> Pattern {
    let mut p = j(gamma);
    for (k, a) in [beta, alpha, Angle::zero()].into_iter().enumerate() {
        let k = k as u32 + 2;
        p = then(&at(j(a), &qubits([k, k + 1])), &p);
    }
    p
}

/// `(I(1) ⊗ H(3,4)) ∘ CZ(1,3) ∘ (I(1) ⊗ H(2,3))`; inputs `[1, 2]`,
/// outputs `[1, 4]`, control on the first.
pub fn cnot() -> Pattern {
    let first = identity(1).tensor(&at(h(), &qubits([2, 3]))).expect("disjoint");
    let middle = at(cz(), &qubits([1, 3]));
    let last = identity(1).tensor(&at(h(), &qubits([3, 4]))).expect("disjoint");
    then(&last, &then(&middle, &first))
}

/// `P(π/2)`, i.e. the 3-qubit z-rotation at `π/2`.
pub fn p_half() -> Pattern {
    rz(Angle::pi_frac(1, 2))
}

/// GHZ preparation on `1, 2, 2', …, n, n'` with outputs `1, 2', …, n'`:
/// `H(n, n') ∘ CZ((n−1)', n) ∘ … ∘ H(2, 2') ∘ CZ(1, 2)` applied to `|+⟩`s.
pub fn ghz(n: u32) -> Result<Pattern, PatternError> {
    if n < 2 {
        return Err(PatternError::Argument(format!("GHZ needs at least 2 qubits, got {n}")));
    }
    let mut p = plus(1);
    let mut last = QubitId::index(1);
    for k in 2..=n {
        let (level, out) = (QubitId::index(k), QubitId::primed(k));
        p = p.tensor(&plus(k))?;
        let entangle = at(cz(), &[last.clone(), level.clone()]);
        p = pass_through(&p.outputs()[..p.outputs().len() - 2], entangle)?.compose(&p)?;
        let hadamard = at(h(), &[level, out.clone()]);
        p = pass_through(&p.outputs()[..p.outputs().len() - 1], hadamard)?.compose(&p)?;
        last = out;
    }
    Ok(p)
}

/// Identities on `wires`, in order, tensored with `piece`.
fn pass_through(wires: &[QubitId], piece: Pattern) -> Result<Pattern, PatternError> {
    wires
        .iter()
        .rev()
        .try_fold(piece, |acc, q| identity(q.clone()).tensor(&acc))
}

/// `(Σ cₖ·θₖ + m·π) / 2` with every `θₖ` taken as its representative in
/// `[0, 2π)`.
fn half_combination(terms: &[(i64, Angle)], pis: i64) -> Angle {
    let exact: Option<Rational> = terms.iter().try_fold(Rational::from_integer(pis), |acc, (k, a)| {
        a.as_pi_multiple().map(|q| acc + q * *k)
    });
    match exact {
        Some(q) => Angle::from_pi_multiple(q / 2),
        None => {
            let r: f64 = terms
                .iter()
                .map(|(k, a)| *k as f64 * a.to_radians::<f64>())
                .sum::<f64>()
                + pis as f64 * std::f64::consts::PI;
            Angle::radians(r / 2.0)
        }
    }
}

/// Controlled-U on 14 qubits from the `J` decomposition
///
/// `CU = J₁(0) J₁(α') J₂(0) J₂(β+π) J₂(−γ/2) J₂(−π/2) J₂(0) CZ J₂(π/2)
///  J₂(γ/2) J₂((−π−δ−β)/2) J₂(0) CZ J₂((−β+δ−π)/2)`
///
/// with `α' = α + (β+γ+δ)/2`. The control line runs `A → B → C`, the
/// target line `a → … → k`. Inputs `[A, a]`, outputs `[C, k]`.
pub fn controlled_u(alpha: Angle, beta: Angle, gamma: Angle, delta: Angle) -> Pattern {
    let target: [Option<Angle>; 10] = [
        Some(half_combination(&[(-1, beta), (1, delta)], -1)),
        None,
        Some(Angle::zero()),
        Some(half_combination(&[(-1, delta), (-1, beta)], -1)),
        Some(half_combination(&[(1, gamma)], 0)),
        Some(Angle::pi_frac(1, 2)),
        None,
        Some(Angle::zero()),
        Some(Angle::pi_frac(-1, 2)),
        Some(-half_combination(&[(1, gamma)], 0)),
    ];
    let tail = [beta.add_pi(), Angle::zero()];
    let names = ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k"];
    let control = QubitId::named("A");
    let mut line = 0usize;
    let mut p = identity(control.clone()).tensor(&identity(names[0])).expect("disjoint");
    let step = |p: &Pattern, line: usize, a: Angle| {
        let stage = identity(control.clone())
            .tensor(&at(
                j(a),
                &[QubitId::named(names[line]), QubitId::named(names[line + 1])],
            ))
            .expect("disjoint");
        then(&stage, p)
    };
    for g in target.into_iter() {
        match g {
            Some(a) => {
                p = step(&p, line, a);
                line += 1;
            }
            None => p = then(&at(cz(), &[control.clone(), QubitId::named(names[line])]), &p),
        }
    }
    for a in tail {
        p = step(&p, line, a);
        line += 1;
    }
    let alpha_prime = alpha + half_combination(&[(1, beta), (1, gamma), (1, delta)], 0);
    let wire = |from: &str, to: &str, a: Angle| {
        at(j(a), &[QubitId::named(from), QubitId::named(to)])
            .tensor(&identity(names[10]))
            .expect("disjoint")
    };
    p = then(&wire("A", "B", alpha_prime), &p);
    then(&wire("B", "C", Angle::zero()), &p)
}

/// Every named builder with sample parameters, for corpus-wide checks.
pub fn corpus() -> Vec<(String, Pattern)> {
    let a = Angle::pi_frac(1, 4);
    let b = Angle::pi_frac(1, 3);
    let g = Angle::pi_frac(5, 6);
    let d = Angle::radians(1.234);
    let mut out = vec![
        ("j".to_string(), j(a)),
        ("cz".into(), cz()),
        ("h".into(), h()),
        ("teleport".into(), teleport(a, b)),
        ("rx".into(), rx(a)),
        ("rz".into(), rz(d)),
        ("rz5".into(), rz5(a)),
        ("rotation".into(), rotation(a, b, g)),
        ("cnot".into(), cnot()),
        ("p_half".into(), p_half()),
        ("cu".into(), controlled_u(a, b, g, d)),
    ];
    for n in 2..=5 {
        out.push((format!("ghz{n}"), ghz(n).expect("n ≥ 2")));
    }
    out
}

/// Parameters parsed from text, for the command line.
pub fn by_name(name: &str, angles: &[Angle], n: Option<u32>) -> Result<Pattern, PatternError> {
    let arg = |k: usize| angles.get(k).copied().unwrap_or_default();
    let need = |k: usize| {
        if angles.len() > k {
            Err(PatternError::Argument(format!(
                "{name} takes at most {k} angle parameters"
            )))
        } else {
            Ok(())
        }
    };
    match name {
        "j" => need(1).map(|_| j(arg(0))),
        "cz" => need(0).map(|_| cz()),
        "h" => need(0).map(|_| h()),
        "teleport" => need(2).map(|_| teleport(arg(0), arg(1))),
        "rx" => need(1).map(|_| rx(arg(0))),
        "rz" => need(1).map(|_| rz(arg(0))),
        "rz5" => need(1).map(|_| rz5(arg(0))),
        "rotation" => need(3).map(|_| rotation(arg(0), arg(1), arg(2))),
        "cnot" => need(0).map(|_| cnot()),
        "p_half" => need(0).map(|_| p_half()),
        "ghz" => ghz(n.unwrap_or(3)),
        "cu" => need(4).map(|_| controlled_u(arg(0), arg(1), arg(2), arg(3))),
        other => Err(PatternError::Argument(format!(
            "unknown pattern {other:?}; expected one of {}",
            NAMES.join(", ")
        ))),
    }
}

pub const NAMES: [&str; 12] = [
    "j", "cz", "h", "teleport", "rx", "rz", "rz5", "rotation", "cnot", "p_half", "ghz", "cu",
];

/// `J(α) = (1/√2)[[1, e^{iα}], [1, −e^{iα}]]`.
pub fn j_matrix<T: Real>(alpha: T) -> CMatrix<T> {
    let r = T::FRAC_1_SQRT_2();
    let w = matrix::phase(alpha) * r;
    let one = Complex::new(r, T::zero());
    matrix::from_rows(&[&[one, w], &[one, -w]])
}

pub fn cz_matrix<T: Real>() -> CMatrix<T> {
    let mut m = matrix::identity::<T>(4);
    m[[3, 3]] = c(-1.0, 0.0);
    m
}

/// Product of the `J` decomposition of controlled-U with control on the
/// low bit, each half angle taken from the `[0, 2π)` representatives.
fn controlled_u_matrix<T: Real>(angles: &[Angle]) -> CMatrix<T> {
    let r = |k: usize| angles.get(k).copied().unwrap_or_default().to_radians::<f64>();
    let (a, b, g, d) = (r(0), r(1), r(2), r(3));
    let pi = std::f64::consts::PI;
    let id2 = matrix::identity::<T>(2);
    let control = |x: f64| matrix::kron(&id2, &j_matrix(T::lit(x)));
    let target = |x: f64| matrix::kron(&j_matrix(T::lit(x)), &id2);
    let factors = [
        control(0.0),
        control(a + (b + g + d) / 2.0),
        target(0.0),
        target(b + pi),
        target(-g / 2.0),
        target(-pi / 2.0),
        target(0.0),
        cz_matrix(),
        target(pi / 2.0),
        target(g / 2.0),
        target((-pi - d - b) / 2.0),
        target(0.0),
        cz_matrix(),
        target((-b + d - pi) / 2.0),
    ];
    factors.iter().fold(matrix::identity::<T>(4), |acc, m| acc.dot(m))
}

/// Patterns for the Clifford theorem checks: the Clifford examples, a
/// measurement-free correction pattern and two non-Clifford witnesses.
pub fn clifford_suite() -> Vec<(String, Pattern)> {
    let corrections = build(
        qubits([1, 2]),
        qubits([1, 2]),
        qubits([1, 2]),
        vec![e(1, 2), Command::x(1, Signal::one()), Command::z(1, Signal::one())],
    );
    vec![
        ("cz".to_string(), cz()),
        ("h".into(), h()),
        ("teleport".into(), teleport(Angle::zero(), Angle::zero())),
        ("cnot".into(), cnot()),
        ("p_half".into(), p_half()),
        ("corrections".into(), corrections),
        ("j(pi/4)".into(), j(Angle::pi_frac(1, 4))),
        ("rx(pi/4)".into(), rx(Angle::pi_frac(1, 4))),
    ]
}

/// Reference unitary of a builder, evaluated from the gate formulas.
/// `None` for state preparations.
pub fn reference_unitary<T: Real>(name: &str, angles: &[Angle]) -> Option<CMatrix<T>> {
    let arg = |k: usize| angles.get(k).copied().unwrap_or_default().to_radians::<T>();
    let jm = |a: T| j_matrix(a);
    let hm = || j_matrix(T::zero());
    let id2 = matrix::identity::<T>(2);
    Some(match name {
        "j" => jm(arg(0)),
        "h" => hm(),
        "cz" => cz_matrix(),
        "teleport" => jm(arg(1)).dot(&jm(arg(0))),
        "rx" => jm(arg(0)).dot(&hm()),
        "rz" => hm().dot(&jm(arg(0))),
        "rz5" => hm().dot(&jm(arg(0))).dot(&hm()).dot(&hm()),
        "rotation" => hm().dot(&jm(arg(0))).dot(&jm(arg(1))).dot(&jm(arg(2))),
        "p_half" => hm().dot(&jm(T::FRAC_PI_2())),
        "cnot" => {
            // control on the low bit
            let ih = matrix::kron(&hm(), &id2);
            ih.dot(&cz_matrix()).dot(&ih)
        }
        "cu" => controlled_u_matrix(angles),
        _ => return None,
    })
}
