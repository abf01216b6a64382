//! Branch-by-branch execution of patterns on state vectors.
//!
//! Amplitude index bit `m` belongs to the `m`-th qubit of
//! [`QuantumState::live`]. Prepared states put the inputs first, in input
//! order, then `V \ I` ascending. Measurements are destructive and do not
//! renormalise.

use ndarray::Array1;
use num_complex::Complex;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::angle::Angle;
use crate::command::Command;
use crate::error::SimError;
use crate::matrix::CMatrix;
use crate::pattern::Pattern;
use crate::qubit::QubitId;
use crate::scalar::Real;
use crate::signal::OutcomeMap;

#[derive(Clone, Debug, PartialEq)]
pub struct QuantumState<T: Real> {
    live: Vec<QubitId>,
    amplitudes: Array1<Complex<T>>,
}

impl<T: Real> QuantumState<T> {
    pub fn new(live: Vec<QubitId>, amplitudes: Array1<Complex<T>>) -> Result<Self, SimError> {
        let expected = 1usize << live.len();
        if amplitudes.len() != expected {
            return Err(SimError::DimensionMismatch {
                expected,
                got: amplitudes.len(),
            });
        }
        Ok(QuantumState { live, amplitudes })
    }

    /// Computational basis state `|k⟩`.
    pub fn basis(live: Vec<QubitId>, k: usize) -> Self {
        let mut amplitudes = Array1::zeros(1usize << live.len());
        amplitudes[k] = Complex::one();
        QuantumState { live, amplitudes }
    }

    pub fn live(&self) -> &[QubitId] {
        &self.live
    }

    pub fn amplitudes(&self) -> &Array1<Complex<T>> {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Array1<Complex<T>> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }

    fn bit(&self, q: &QubitId) -> Result<usize, SimError> {
        self.live
            .iter()
            .position(|l| l == q)
            .map(|m| 1usize << m)
            .ok_or_else(|| SimError::DeadQubit(q.clone()))
    }

    pub fn apply_cz(&mut self, i: &QubitId, j: &QubitId) -> Result<(), SimError> {
        let mask = self.bit(i)? | self.bit(j)?;
        for (k, a) in self.amplitudes.iter_mut().enumerate() {
            if k & mask == mask {
                *a = -*a;
            }
        }
        Ok(())
    }

    pub fn apply_x(&mut self, q: &QubitId) -> Result<(), SimError> {
        let b = self.bit(q)?;
        for k in 0..self.amplitudes.len() {
            if k & b == 0 {
                self.amplitudes.swap(k, k | b);
            }
        }
        Ok(())
    }

    pub fn apply_z(&mut self, q: &QubitId) -> Result<(), SimError> {
        let b = self.bit(q)?;
        for (k, a) in self.amplitudes.iter_mut().enumerate() {
            if k & b != 0 {
                *a = -*a;
            }
        }
        Ok(())
    }

    /// Destructive xy-measurement: projects `q` onto
    /// `(⟨0| + (−1)^r e^{−iα}⟨1|)/√2` for outcome `r` and removes it.
    pub fn project(&self, q: &QubitId, angle: T, outcome: bool) -> Result<Self, SimError> {
        let b = self.bit(q)?;
        let m = b.trailing_zeros();
        let low = b - 1;
        let mut w = Complex::from_polar(T::one(), -angle);
        if outcome {
            w = -w;
        }
        let s = T::FRAC_1_SQRT_2();
        let amplitudes = Array1::from_shape_fn(self.amplitudes.len() / 2, |r| {
            let k0 = (r & low) | ((r >> m) << (m + 1));
            (self.amplitudes[k0] + w * self.amplitudes[k0 | b]) * s
        });
        let mut live = self.live.clone();
        live.remove(m as usize);
        Ok(QuantumState { live, amplitudes })
    }

    /// Amplitudes reordered so that bit `m` belongs to `order[m]`; `order`
    /// must be a permutation of the live qubits.
    pub fn reordered(&self, order: &[QubitId]) -> Result<Self, SimError> {
        let masks = order.iter().map(|q| self.bit(q)).collect::<Result<Vec<_>, _>>()?;
        if order.len() != self.live.len() {
            return Err(SimError::DimensionMismatch {
                expected: self.live.len(),
                got: order.len(),
            });
        }
        let amplitudes = Array1::from_shape_fn(self.amplitudes.len(), |k| {
            let src = masks
                .iter()
                .enumerate()
                .filter(|(m, _)| k >> m & 1 == 1)
                .fold(0, |acc, (_, b)| acc | b);
            self.amplitudes[src]
        });
        Ok(QuantumState {
            live: order.to_vec(),
            amplitudes,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComputationState<T: Real> {
    pub q: QuantumState<T>,
    pub outcomes: OutcomeMap,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Branch<T: Real> {
    pub outcomes: OutcomeMap,
    /// Unnormalised output over the pattern's output ordering.
    pub output: QuantumState<T>,
    pub probability: T,
}

/// `ψ ⊗ |+…+⟩` over `I` followed by `V \ I` ascending.
pub fn prepare<T: Real>(p: &Pattern, psi: &Array1<Complex<T>>) -> Result<ComputationState<T>, SimError> {
    let n_in = p.inputs().len();
    let expected = 1usize << n_in;
    if psi.len() != expected {
        return Err(SimError::DimensionMismatch {
            expected,
            got: psi.len(),
        });
    }
    if psi.iter().all(|z| z.is_zero()) {
        return Err(SimError::ZeroInput);
    }
    let prepared = p.prepared();
    let scale = T::FRAC_1_SQRT_2().powi(prepared.len() as i32);
    let mask = expected - 1;
    let mut live = p.inputs().to_vec();
    live.extend(prepared);
    let amplitudes = Array1::from_shape_fn(1usize << live.len(), |k| psi[k & mask] * scale);
    Ok(ComputationState {
        q: QuantumState { live, amplitudes },
        outcomes: OutcomeMap::new(),
    })
}

fn measurement_angle<T: Real>(cmd: &Command, outcomes: &OutcomeMap) -> Result<Option<(QubitId, T)>, SimError> {
    match cmd {
        Command::M(m) => {
            let a: Angle = m.effective_angle(m.s.eval(outcomes)?, m.t.eval(outcomes)?);
            Ok(Some((m.qubit.clone(), a.to_radians())))
        }
        _ => Ok(None),
    }
}

/// Applies a non-measurement command in place.
fn apply_unitary<T: Real>(state: &mut ComputationState<T>, cmd: &Command) -> Result<(), SimError> {
    match cmd {
        Command::E(i, j) => state.q.apply_cz(i, j),
        Command::X(q, s) => {
            if s.eval(&state.outcomes)? {
                state.q.apply_x(q)?;
            } else {
                state.q.bit(q)?;
            }
            Ok(())
        }
        Command::Z(q, s) => {
            if s.eval(&state.outcomes)? {
                state.q.apply_z(q)?;
            } else {
                state.q.bit(q)?;
            }
            Ok(())
        }
        Command::S(q, s) => {
            let shift = s.eval(&state.outcomes)?;
            let v = state
                .outcomes
                .get_mut(q)
                .ok_or_else(|| SimError::MissingOutcome(q.clone()))?;
            *v ^= shift;
            Ok(())
        }
        Command::M(_) => unreachable!(),
    }
}

/// One command. A measurement yields up to two successors, outcome 0
/// first; branches with squared norm below `cutoff` are dropped.
pub fn step<T: Real>(
    state: &ComputationState<T>,
    cmd: &Command,
    cutoff: T,
) -> Result<Vec<ComputationState<T>>, SimError> {
    match measurement_angle::<T>(cmd, &state.outcomes)? {
        None => {
            let mut next = state.clone();
            apply_unitary(&mut next, cmd)?;
            Ok(vec![next])
        }
        Some((q, angle)) => {
            let mut out = Vec::with_capacity(2);
            for r in [false, true] {
                let projected = state.q.project(&q, angle, r)?;
                if projected.norm_sqr() >= cutoff {
                    let mut outcomes = state.outcomes.clone();
                    outcomes.insert(q.clone(), r);
                    out.push(ComputationState { q: projected, outcomes });
                }
            }
            Ok(out)
        }
    }
}

fn norm_tolerance<T: Real>() -> T {
    T::lit(1e-12).max(T::epsilon() * T::lit(64.0))
}

fn explore<T: Real>(
    mut state: ComputationState<T>,
    commands: &[Command],
    outputs: &[QubitId],
    input_norm: T,
    cutoff: T,
    out: &mut Vec<Branch<T>>,
) -> Result<(), SimError> {
    for (k, cmd) in commands.iter().enumerate() {
        if let Some((q, angle)) = measurement_angle::<T>(cmd, &state.outcomes)? {
            let before = state.q.norm_sqr();
            let mut total = T::zero();
            for r in [false, true] {
                let projected = state.q.project(&q, angle, r)?;
                let n = projected.norm_sqr();
                total = total + n;
                if n >= cutoff {
                    let mut outcomes = state.outcomes.clone();
                    outcomes.insert(q.clone(), r);
                    let child = ComputationState { q: projected, outcomes };
                    explore(child, &commands[k + 1..], outputs, input_norm, cutoff, out)?;
                }
            }
            debug_assert!(
                (total - before).abs() <= norm_tolerance::<T>() * input_norm,
                "norm not conserved across measurement"
            );
            return Ok(());
        }
        apply_unitary(&mut state, cmd)?;
    }
    let output = state.q.reordered(outputs)?;
    let probability = output.norm_sqr() / input_norm;
    out.push(Branch {
        outcomes: state.outcomes,
        output,
        probability,
    });
    Ok(())
}

/// Every nonzero branch, depth first with outcome 0 explored first.
pub fn run_all_branches<T: Real>(p: &Pattern, psi: &Array1<Complex<T>>) -> Result<Vec<Branch<T>>, SimError> {
    p.validate().into_result()?;
    let start = prepare(p, psi)?;
    let input_norm = start_norm(psi);
    let cutoff = T::branch_cutoff() * input_norm;
    let mut out = Vec::new();
    explore(start, p.commands(), p.outputs(), input_norm, cutoff, &mut out)?;
    Ok(out)
}

fn start_norm<T: Real>(psi: &Array1<Complex<T>>) -> T {
    psi.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
}

/// Runs one branch with prescribed outcomes. Returns the unnormalised
/// output over the output ordering.
pub fn run_branch<T: Real>(
    p: &Pattern,
    psi: &Array1<Complex<T>>,
    outcomes: &OutcomeMap,
) -> Result<QuantumState<T>, SimError> {
    let mut state = prepare(p, psi)?;
    for cmd in p.commands() {
        match measurement_angle::<T>(cmd, &state.outcomes)? {
            Some((q, angle)) => {
                let r = *outcomes.get(&q).ok_or_else(|| SimError::MissingOutcome(q.clone()))?;
                state.q = state.q.project(&q, angle, r)?;
                state.outcomes.insert(q, r);
            }
            None => apply_unitary(&mut state, cmd)?,
        }
    }
    state.q.reordered(p.outputs())
}

/// `|⟨u,v⟩| ≥ (1 − tol)·‖u‖‖v‖`.
pub fn collinear<T: Real>(u: &Array1<Complex<T>>, v: &Array1<Complex<T>>, tol: T) -> bool {
    let dot = u
        .iter()
        .zip(v.iter())
        .fold(Complex::zero(), |acc: Complex<T>, (a, b)| acc + a.conj() * b);
    let nu = u.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt();
    let nv = v.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt();
    dot.norm() >= (T::one() - tol) * nu * nv
}

/// Basis states of `H_I` followed by 8 fixed pseudorandom unit vectors.
pub fn probe_states<T: Real>(n_inputs: usize) -> Vec<Array1<Complex<T>>> {
    let dim = 1usize << n_inputs;
    let mut probes: Vec<Array1<Complex<T>>> = (0..dim)
        .map(|k| Array1::from_shape_fn(dim, |j| if j == k { Complex::one() } else { Complex::zero() }))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..8 {
        let v: Array1<Complex<T>> = Array1::from_shape_fn(dim, |_| {
            Complex::new(T::lit(rng.gen_range(-1.0..1.0)), T::lit(rng.gen_range(-1.0..1.0)))
        });
        let n = start_norm(&v).sqrt();
        probes.push(v.mapv(|z| z / n));
    }
    probes
}

/// All branch outputs pairwise collinear on every probe state.
pub fn is_deterministic<T: Real>(p: &Pattern, tol: T) -> Result<bool, SimError> {
    for psi in probe_states::<T>(p.inputs().len()) {
        let branches = run_all_branches(p, &psi)?;
        let Some(first) = branches.first() else {
            return Err(SimError::NoBranch);
        };
        if !branches
            .iter()
            .all(|b| collinear(first.output.amplitudes(), b.output.amplitudes(), tol))
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First nonzero branch on `|0…0⟩`, in depth-first outcome-0-first order.
fn reference_branch<T: Real>(p: &Pattern) -> Result<OutcomeMap, SimError> {
    let e0 = probe_states::<T>(p.inputs().len()).swap_remove(0);
    let start = prepare(p, &e0)?;
    let mut out = Vec::new();
    explore(start, p.commands(), p.outputs(), T::one(), T::branch_cutoff(), &mut out)?;
    out.into_iter().next().map(|b| b.outcomes).ok_or(SimError::NoBranch)
}

/// `U_P`, a `2^|O| × 2^|I|` isometry defined up to one global phase.
///
/// Every column is computed along the same branch, so the branch scalar is
/// shared and only its modulus is divided out.
pub fn extract_unitary<T: Real>(p: &Pattern, tol: T) -> Result<CMatrix<T>, SimError> {
    if !is_deterministic(p, tol)? {
        return Err(SimError::NotDeterministic);
    }
    unitary_along_reference(p)
}

/// As [`extract_unitary`] without the determinism probe. The result is
/// meaningless for nondeterministic patterns.
pub fn unitary_along_reference<T: Real>(p: &Pattern) -> Result<CMatrix<T>, SimError> {
    p.validate().into_result()?;
    let gamma = reference_branch::<T>(p)?;
    let cols = 1usize << p.inputs().len();
    let rows = 1usize << p.outputs().len();
    let mut u = CMatrix::<T>::zeros((rows, cols));
    for k in 0..cols {
        let e = Array1::from_shape_fn(cols, |j| if j == k { Complex::one() } else { Complex::zero() });
        let out: QuantumState<T> = run_branch(p, &e, &gamma)?;
        let n = out.norm_sqr().sqrt();
        if n.is_zero() {
            return Err(SimError::NotDeterministic);
        }
        u.column_mut(k).assign(&out.amplitudes().mapv(|z| z / n));
    }
    Ok(u)
}

/// `x` with 12 significant digits.
fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:.11}");
    }
    let digits = 11 - x.abs().log10().floor() as i32;
    format!("{x:.*}", digits.max(0) as usize)
}

/// One line per branch: outcome bits in qubit order, the probability and,
/// optionally, the unnormalised output amplitudes.
pub fn branch_report<T: Real>(branches: &[Branch<T>], amplitudes: bool) -> String {
    let mut out = String::new();
    for b in branches {
        let bits: Vec<String> = b
            .outcomes
            .iter()
            .map(|(q, r)| format!("s_{q}={}", u8::from(*r)))
            .collect();
        let bits = if bits.is_empty() {
            "-".to_string()
        } else {
            bits.join(" ")
        };
        out.push_str(&format!("{bits} p={}", sig12(b.probability.to_f64().unwrap())));
        if amplitudes {
            let amps: Vec<String> = b
                .output
                .amplitudes()
                .iter()
                .map(|z| {
                    let (re, im) = (z.re.to_f64().unwrap(), z.im.to_f64().unwrap());
                    format!("{re:.9}{}{:.9}i", if im < 0.0 { '-' } else { '+' }, im.abs())
                })
                .collect();
            out.push_str(&format!(" out=[{}]", amps.join(", ")));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;
    use crate::matrix::{c, equal_up_to_phase, from_rows};
    use crate::qubit::qubits;
    use crate::signal::Signal;

    fn ket(v: &[Complex<f64>]) -> Array1<Complex<f64>> {
        Array1::from_vec(v.to_vec())
    }

    #[test]
    fn prepare_plus_on_non_inputs() {
        let s = prepare(&library::h(), &ket(&[c(1.0, 0.0), c(0.0, 0.0)])).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        // |0⟩ on qubit 1 (low bit), |+⟩ on qubit 2
        assert_eq!(
            s.q.amplitudes().to_vec(),
            vec![c(r, 0.0), c(0.0, 0.0), c(r, 0.0), c(0.0, 0.0)]
        );
        assert_eq!(s.q.live(), &qubits([1, 2]));
        assert!(prepare(&library::h(), &ket(&[c(1.0, 0.0)])).is_err());
        assert_eq!(
            prepare(&library::h(), &ket(&[c(0.0, 0.0), c(0.0, 0.0)])),
            Err(SimError::ZeroInput)
        );
    }

    #[test]
    fn measurement_on_plus_gives_scaled_input() {
        // M_2^α on q ⊗ |+⟩ gives ½(1 ± e^{−iα}) q
        let alpha = 0.9_f64;
        let p = Pattern::new(
            qubits([1, 2]),
            qubits([1]),
            qubits([1]),
            vec![Command::measure(2, Angle::radians(alpha))],
        )
        .unwrap();
        let q = ket(&[c(0.6, 0.0), c(0.0, 0.8)]);
        let branches = run_all_branches(&p, &q).unwrap();
        assert_eq!(branches.len(), 2);
        let w = Complex::from_polar(1.0, -alpha);
        for (b, sign) in branches.iter().zip([1.0, -1.0]) {
            let f = (Complex::new(1.0, 0.0) + w * sign) * 0.5;
            let expected = q.mapv(|z| z * f);
            let diff: f64 = b
                .output
                .amplitudes()
                .iter()
                .zip(expected.iter())
                .map(|(x, y)| (x - y).norm())
                .sum();
            assert!(diff < 1e-12);
        }
    }

    #[test]
    fn hadamard_branches() {
        // E_12 then M_1^0 on (a|0⟩ + b|1⟩) ⊗ |+⟩
        let (a, b) = (0.6, 0.8);
        let frag = Pattern::new(
            qubits([1, 2]),
            qubits([1]),
            qubits([2]),
            vec![Command::entangle(1, 2).unwrap(), Command::measure(1, Angle::zero())],
        )
        .unwrap();
        let branches = run_all_branches(&frag, &ket(&[c(a, 0.0), c(b, 0.0)])).unwrap();
        let got: Vec<Vec<Complex<f64>>> = branches.iter().map(|b| b.output.amplitudes().to_vec()).collect();
        assert_eq!(got.len(), 2);
        let close = |x: &[Complex<f64>], y: [f64; 2]| (x[0].re - y[0]).abs() < 1e-12 && (x[1].re - y[1]).abs() < 1e-12;
        assert!(close(&got[0], [0.5 * (a + b), 0.5 * (a - b)]));
        assert!(close(&got[1], [0.5 * (a - b), 0.5 * (a + b)]));
    }

    #[test]
    fn correction_with_zero_signal_is_identity() {
        let mut s = prepare(&library::h(), &ket(&[c(0.6, 0.0), c(0.8, 0.0)])).unwrap();
        s.outcomes.insert(1.into(), false);
        let before = s.q.clone();
        let next = step(&s, &Command::x(1, Signal::outcome(1)), 0.0).unwrap();
        assert_eq!(next[0].q, before);
    }

    #[test]
    fn dead_qubit_is_reported() {
        let s = prepare(&library::h(), &ket(&[c(1.0, 0.0), c(0.0, 0.0)])).unwrap();
        let err = step(&s, &Command::x(7, Signal::zero()), 0.0).unwrap_err();
        assert_eq!(err, SimError::DeadQubit(7.into()));
    }

    #[test]
    fn hadamard_unitary() {
        let u = extract_unitary::<f64>(&library::h(), 1e-9).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let h = from_rows(&[&[c(r, 0.0), c(r, 0.0)], &[c(r, 0.0), c(-r, 0.0)]]);
        assert!(equal_up_to_phase(&u, &h, 1e-9));
    }

    #[test]
    fn report_lines() {
        let p = Pattern::new(
            qubits([1, 2]),
            qubits([1]),
            qubits([1]),
            vec![Command::measure(2, Angle::pi_frac(1, 3))],
        )
        .unwrap();
        let branches = run_all_branches(&p, &ket(&[c(1.0, 0.0), c(0.0, 0.0)])).unwrap();
        assert_eq!(
            branch_report(&branches, false),
            "s_2=0 p=0.750000000000\ns_2=1 p=0.250000000000\n"
        );
    }

    #[test]
    fn single_precision_runs() {
        let u = extract_unitary::<f32>(&library::h(), 1e-4).unwrap();
        assert!(crate::matrix::is_unitary(&u, 1e-5));
    }

    #[test]
    fn reorder_swaps_bits() {
        let s = QuantumState::<f64>::basis(qubits([1, 2]), 1);
        let r = s.reordered(&qubits([2, 1])).unwrap();
        assert_eq!(r.amplitudes()[2], c(1.0, 0.0));
    }
}
