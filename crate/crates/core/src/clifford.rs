//! Pauli measurements, dependency elimination and Clifford membership.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use itertools::Itertools;
use num_complex::Complex;
use num_traits::{One, Zero};

use crate::angle::PauliAxis;
use crate::command::{Command, Measure};
use crate::error::AnalysisError;
use crate::matrix::{self, CMatrix};
use crate::pattern::Pattern;
use crate::qubit::QubitId;
use crate::rewrite;
use crate::scalar::Real;
use crate::signal::Signal;
use crate::sim;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    /// `a·b = i^k c`.
    fn product(self, other: Pauli) -> (u8, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (0, p),
            (a, b) if a == b => (0, I),
            (X, Y) => (1, Z),
            (Y, Z) => (1, X),
            (Z, X) => (1, Y),
            (Y, X) => (3, Z),
            (Z, Y) => (3, X),
            (X, Z) => (3, Y),
            _ => unreachable!(),
        }
    }

    pub fn matrix<T: Real>(self) -> CMatrix<T> {
        let (o, z, i) = (Complex::one(), Complex::zero(), Complex::i());
        match self {
            Pauli::I => matrix::identity(2),
            Pauli::X => matrix::from_rows(&[&[z, o], &[o, z]]),
            Pauli::Y => matrix::from_rows(&[&[z, -i], &[i, z]]),
            Pauli::Z => matrix::from_rows(&[&[o, z], &[z, -o]]),
        }
    }
}

/// `i^phase · ⊗_q letters[q]`; absent qubits carry `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliWord {
    pub phase: u8,
    pub letters: BTreeMap<QubitId, Pauli>,
}

impl PauliWord {
    pub fn identity() -> Self {
        PauliWord {
            phase: 0,
            letters: BTreeMap::new(),
        }
    }

    pub fn single(q: impl Into<QubitId>, p: Pauli) -> Self {
        let mut w = PauliWord::identity();
        if p != Pauli::I {
            w.letters.insert(q.into(), p);
        }
        w
    }

    pub fn letter(&self, q: &QubitId) -> Pauli {
        self.letters.get(q).copied().unwrap_or(Pauli::I)
    }

    pub fn phase_factor<T: Real>(&self) -> Complex<T> {
        [Complex::one(), Complex::i(), -Complex::<T>::one(), -Complex::<T>::i()][self.phase as usize % 4]
    }

    /// Matrix with `order[m]` on index bit `m`.
    pub fn to_matrix<T: Real>(&self, order: &[QubitId]) -> CMatrix<T> {
        let mut m = matrix::identity::<T>(1);
        for q in order {
            m = matrix::kron(&self.letter(q).matrix(), &m);
        }
        let f = self.phase_factor::<T>();
        m.mapv(|z| z * f)
    }
}

impl Mul for &PauliWord {
    type Output = PauliWord;

    fn mul(self, rhs: &PauliWord) -> PauliWord {
        let mut out = PauliWord {
            phase: (self.phase + rhs.phase) % 4,
            letters: BTreeMap::new(),
        };
        for q in self.letters.keys().chain(rhs.letters.keys()).unique() {
            let (k, p) = self.letter(q).product(rhs.letter(q));
            out.phase = (out.phase + k) % 4;
            if p != Pauli::I {
                out.letters.insert(q.clone(), p);
            }
        }
        out
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["+", "+i", "-", "-i"][self.phase as usize % 4])?;
        if self.letters.is_empty() {
            return f.write_str("I");
        }
        for (q, p) in &self.letters {
            write!(f, "{p:?}{q}")?;
        }
        Ok(())
    }
}

/// Every measurement is along X or Y: exact angle in `{0, π/2, π, 3π/2}`.
/// Refuses inexact angles.
pub fn is_pauli_only(p: &Pattern) -> Result<bool, AnalysisError> {
    let mut all = true;
    for c in p.commands() {
        if let Command::M(m) = c {
            if !m.angle.is_exact() {
                return Err(AnalysisError::InexactAngle(m.qubit.clone()));
            }
            all &= m.angle.pauli_axis().is_some();
        }
    }
    Ok(all)
}

/// Some command reads a measurement outcome.
pub fn has_dependencies(p: &Pattern) -> bool {
    p.commands()
        .iter()
        .any(|c| c.signals().iter().any(|s| !s.is_constant()))
}

/// Removes every dependency from the measurements of a standard Pauli-only
/// pattern. `M^x[s,t] = M^x[t]` and `M^y[s,t] = M^y[s+t]` turn X-actions
/// into Z-actions, angles are folded into `{0, π/2}` and the remaining
/// Z-actions are shifted into the corrections.
pub fn pauli_eliminate(p: &Pattern) -> Result<Pattern, AnalysisError> {
    if !rewrite::is_standard(p) || !p.is_emc() {
        return Err(AnalysisError::NotStandard);
    }
    if !is_pauli_only(p)? {
        return Err(AnalysisError::NotPauliOnly);
    }
    let mut commands = p.commands().to_vec();
    let mut trace = Vec::new();
    let mut k = 0;
    while k < commands.len() {
        let Command::M(m) = &commands[k] else {
            k += 1;
            continue;
        };
        let axis = m.angle.pauli_axis().expect("Pauli-only");
        let mut t = m.t.clone();
        if axis == PauliAxis::Y {
            t += &m.s;
        }
        let (angle, flipped) = m.angle.fold_pi();
        if flipped {
            t += &Signal::one();
        }
        let qubit = m.qubit.clone();
        commands[k] = Command::M(Measure {
            qubit: qubit.clone(),
            angle,
            s: Signal::zero(),
            t: Signal::zero(),
        });
        if !t.is_zero() {
            commands.insert(k + 1, Command::S(qubit, t));
            rewrite::flush_all_shifts(&mut commands, &mut trace);
        }
        k += 1;
    }
    Ok(p.with_commands(commands))
}

/// Whether `U` normalises the Pauli group: every `U g Uᴴ` for
/// `g ∈ {X_k, Z_k}` is a Pauli word up to a phase in `{±1, ±i}`.
pub fn is_clifford<T: Real>(u: &CMatrix<T>, tol: T) -> Result<bool, AnalysisError> {
    let (rows, cols) = u.dim();
    let n = rows.trailing_zeros() as usize;
    if rows != cols || !rows.is_power_of_two() || n > 3 {
        return Err(AnalysisError::BadShape(rows, cols, 3));
    }
    if !matrix::is_unitary(u, tol * T::lit(rows as f64)) {
        return Err(AnalysisError::NotUnitary);
    }
    let order: Vec<QubitId> = (0..n as u32).map(QubitId::index).collect();
    let words: Vec<CMatrix<T>> = (0..n)
        .map(|_| Pauli::ALL)
        .multi_cartesian_product()
        .map(|letters| {
            let w = PauliWord {
                phase: 0,
                letters: order
                    .iter()
                    .cloned()
                    .zip(letters)
                    .filter(|(_, p)| *p != Pauli::I)
                    .collect(),
            };
            w.to_matrix::<T>(&order)
        })
        .collect();
    let ud = matrix::adjoint(u);
    for q in &order {
        for g in [Pauli::X, Pauli::Z] {
            let gm = PauliWord::single(q.clone(), g).to_matrix::<T>(&order);
            let conj = u.dot(&gm).dot(&ud);
            if !words.iter().any(|w| matches_with_phase(&conj, w, tol)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The Pauli word, phase included, equal to `U g Uᴴ`, if any.
pub fn conjugate_word<T: Real>(u: &CMatrix<T>, g: &PauliWord, tol: T) -> Option<PauliWord> {
    let n = u.nrows().trailing_zeros();
    let order: Vec<QubitId> = (0..n).map(QubitId::index).collect();
    let conj = u.dot(&g.to_matrix::<T>(&order)).dot(&matrix::adjoint(u));
    (0..order.len())
        .map(|_| Pauli::ALL)
        .multi_cartesian_product()
        .flat_map(|letters| {
            let base: BTreeMap<QubitId, Pauli> = order
                .iter()
                .cloned()
                .zip(letters)
                .filter(|(_, p)| *p != Pauli::I)
                .collect();
            (0..4).map(move |phase| PauliWord {
                phase,
                letters: base.clone(),
            })
        })
        .find(|w| {
            let m = w.to_matrix::<T>(&order);
            m.iter().zip(conj.iter()).all(|(a, b)| (*a - *b).norm() <= tol)
        })
}

/// Entrywise match against `λ·w` for the best `λ ∈ {1, i, −1, −i}`.
fn matches_with_phase<T: Real>(m: &CMatrix<T>, w: &CMatrix<T>, tol: T) -> bool {
    let overlap = matrix::inner(w, m);
    let dim = T::lit(m.nrows() as f64);
    let lambda = overlap / dim;
    let phases = [Complex::one(), Complex::i(), -Complex::<T>::one(), -Complex::<T>::i()];
    let best = phases
        .into_iter()
        .min_by(|a, b| (lambda - a).norm().partial_cmp(&(lambda - b).norm()).expect("finite"))
        .expect("four phases");
    m.iter().zip(w.iter()).all(|(a, b)| (*a - best * b).norm() <= tol)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// The theorem applies and the unitary is Clifford.
    Pass,
    /// The theorem applies but the unitary is not Clifford.
    Fail,
    /// Neither hypothesis holds; `clifford` records the observed membership.
    Exempt { clifford: bool },
    /// The check could not run.
    Error(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TheoremCheck {
    pub pattern: String,
    pub theorem: &'static str,
    pub verdict: Verdict,
}

impl fmt::Display for TheoremCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match &self.verdict {
            Verdict::Pass => "PASS".to_string(),
            Verdict::Fail => "FAIL".to_string(),
            Verdict::Exempt { clifford } => {
                format!("EXEMPT ({})", if *clifford { "clifford" } else { "non-clifford" })
            }
            Verdict::Error(e) => format!("FAIL ({e})"),
        };
        write!(f, "{} {}: {status}", self.pattern, self.theorem)
    }
}

/// Pauli-only patterns and dependency-free patterns implement Clifford
/// unitaries; checked numerically for each named pattern.
pub fn verify_no_dependency_theorems(patterns: &[(String, Pattern)], tol: f64) -> Vec<TheoremCheck> {
    let mut report = Vec::new();
    for (name, p) in patterns {
        let analysed = (|| -> Result<(bool, bool, bool), AnalysisError> {
            let (standard, _) = rewrite::standardize(p)?;
            let pauli = is_pauli_only(&standard)?;
            let deps = has_dependencies(&standard);
            let u = sim::extract_unitary::<f64>(&standard, tol)?;
            Ok((pauli, deps, is_clifford(&u, tol)?))
        })();
        match analysed {
            Ok((pauli, deps, clifford)) => {
                let verdict = |applies: bool| match (applies, clifford) {
                    (true, true) => Verdict::Pass,
                    (true, false) => Verdict::Fail,
                    (false, c) => Verdict::Exempt { clifford: c },
                };
                report.push(TheoremCheck {
                    pattern: name.clone(),
                    theorem: "pauli-only",
                    verdict: verdict(pauli),
                });
                report.push(TheoremCheck {
                    pattern: name.clone(),
                    theorem: "no-dependency",
                    verdict: verdict(!deps),
                });
            }
            Err(e) => report.push(TheoremCheck {
                pattern: name.clone(),
                theorem: "analysis",
                verdict: Verdict::Error(e.to_string()),
            }),
        }
    }
    report
}
