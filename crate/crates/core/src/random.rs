//! Random patterns for property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::angle::Angle;
use crate::command::Command;
use crate::library;
use crate::matrix::{self, CMatrix};
use crate::pattern::Pattern;
use crate::qubit::QubitId;
use crate::signal::Signal;

fn random_angle(rng: &mut impl Rng) -> Angle {
    if rng.gen_bool(0.1) {
        Angle::radians(rng.gen_range(0.0..std::f64::consts::TAU))
    } else {
        Angle::pi_frac(rng.gen_range(0..8), 4)
    }
}

fn random_signal(rng: &mut impl Rng, measured: &[QubitId]) -> Signal {
    let mut s = Signal::zero();
    if rng.gen_bool(0.2) {
        s += &Signal::one();
    }
    if !measured.is_empty() {
        for _ in 0..rng.gen_range(0..=3usize) {
            s.toggle(measured.choose(rng).expect("nonempty").clone());
        }
    }
    s
}

/// A runnable wild pattern with exactly `n` commands (`n ≥ 1`).
///
/// The qubit count scales with `n`; inputs and outputs are random, every
/// non-output is measured once and all signals read earlier outcomes.
pub fn wild_pattern(rng: &mut impl Rng, n: usize) -> Pattern {
    assert!(n >= 1, "need at least one command");
    let width = (n / 3).clamp(1, 64);
    let all: Vec<QubitId> = (1..=width as u32).map(QubitId::index).collect();
    // at most n/4 measurements so the rest of the budget goes to E and C
    let n_measured = rng.gen_range(0..=(n / 4).min(width.saturating_sub(1)));
    let mut shuffled = all.clone();
    shuffled.shuffle(rng);
    let (to_measure, outputs) = shuffled.split_at(n_measured);
    let mut outputs = outputs.to_vec();
    outputs.shuffle(rng);
    let inputs: Vec<QubitId> = all.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();

    // measurement slots spread over the sequence
    let mut slots: Vec<usize> = rand::seq::index::sample(rng, n, n_measured).into_vec();
    slots.sort_unstable();
    let mut pending: Vec<QubitId> = to_measure.to_vec();
    let mut alive: Vec<QubitId> = all.clone();
    let mut measured: Vec<QubitId> = Vec::new();
    let mut commands = Vec::with_capacity(n);
    for k in 0..n {
        if slots.first() == Some(&k) {
            slots.remove(0);
            let q = pending.pop().expect("one pending per slot");
            let s = random_signal(rng, &measured);
            let t = random_signal(rng, &measured);
            commands.push(Command::measure_dep(q.clone(), random_angle(rng), s, t));
            alive.retain(|a| a != &q);
            measured.push(q);
            continue;
        }
        let choice = rng.gen_range(0..10);
        let cmd = if choice < 5 && alive.len() >= 2 {
            let pair: Vec<&QubitId> = alive.choose_multiple(rng, 2).collect();
            Command::entangle(pair[0].clone(), pair[1].clone()).expect("distinct")
        } else {
            let q = alive.choose(rng).expect("an output is always alive").clone();
            let s = random_signal(rng, &measured);
            if rng.gen_bool(0.5) {
                Command::x(q, s)
            } else {
                Command::z(q, s)
            }
        };
        commands.push(cmd);
    }
    Pattern::new(all, inputs, outputs, commands).expect("generated pattern is well formed")
}

/// A gate of a random generator circuit on wires `0..m`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    J {
        wire: usize,
        angle: Angle,
    },
    /// `CZ` between `wire` and `wire + 1`.
    Cz {
        wire: usize,
    },
}

pub fn random_gates(rng: &mut impl Rng, wires: usize, count: usize) -> Vec<Gate> {
    (0..count)
        .map(|_| {
            if wires >= 2 && rng.gen_bool(0.3) {
                Gate::Cz {
                    wire: rng.gen_range(0..wires - 1),
                }
            } else {
                Gate::J {
                    wire: rng.gen_range(0..wires),
                    angle: random_angle(rng),
                }
            }
        })
        .collect()
}

/// Pattern running `gates` on wires entering at `inputs`, with fresh qubit
/// labels starting at `fresh`. Inputs and outputs follow wire order.
pub fn circuit_pattern(inputs: &[QubitId], fresh: u32, gates: &[Gate]) -> Pattern {
    let mut current: Vec<QubitId> = inputs.to_vec();
    let mut p = tensor_all(current.iter().map(|q| library::identity(q.clone())));
    let mut next = fresh;
    for g in gates {
        let pieces: Vec<Pattern> = match *g {
            Gate::J { wire, angle } => {
                let out = QubitId::index(next);
                next += 1;
                let mut pieces = Vec::new();
                for (w, q) in current.iter().enumerate() {
                    if w == wire {
                        pieces.push(library::j(angle).place(&[q.clone(), out.clone()]).expect("two labels"));
                    } else {
                        pieces.push(library::identity(q.clone()));
                    }
                }
                current[wire] = out;
                pieces
            }
            Gate::Cz { wire } => {
                let mut pieces = Vec::new();
                let mut w = 0;
                while w < current.len() {
                    if w == wire {
                        pieces.push(
                            library::cz()
                                .place(&[current[w].clone(), current[w + 1].clone()])
                                .expect("two labels"),
                        );
                        w += 2;
                    } else {
                        pieces.push(library::identity(current[w].clone()));
                        w += 1;
                    }
                }
                pieces
            }
        };
        p = tensor_all(pieces.into_iter()).compose(&p).expect("interfaces match");
    }
    p
}

fn tensor_all(pieces: impl Iterator<Item = Pattern>) -> Pattern {
    pieces.fold(Pattern::empty(), |acc, q| acc.tensor(&q).expect("disjoint pieces"))
}

/// Reference unitary of a gate list, wire `w` on index bit `w`.
pub fn circuit_unitary(wires: usize, gates: &[Gate]) -> CMatrix<f64> {
    let mut u = matrix::identity::<f64>(1 << wires);
    for g in gates {
        let (low, gate, width) = match *g {
            Gate::J { wire, angle } => (wire, library::j_matrix::<f64>(angle.to_radians()), 1),
            Gate::Cz { wire } => (wire, library::cz_matrix::<f64>(), 2),
        };
        let below = matrix::identity::<f64>(1 << low);
        let above = matrix::identity::<f64>(1 << (wires - low - width));
        let full = matrix::kron(&above, &matrix::kron(&gate, &below));
        u = full.dot(&u);
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn wild_patterns_are_runnable() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [1, 2, 5, 15, 60, 200] {
            for _ in 0..20 {
                let p = wild_pattern(&mut rng, n);
                assert_eq!(p.len(), n);
                let r = p.validate();
                assert!(r.is_runnable(), "{r}");
            }
        }
    }

    #[test]
    fn circuit_interfaces_follow_wires() {
        let gates = [
            Gate::J {
                wire: 1,
                angle: Angle::zero(),
            },
            Gate::Cz { wire: 0 },
        ];
        let inputs: Vec<QubitId> = [1u32, 2].into_iter().map(QubitId::index).collect();
        let p = circuit_pattern(&inputs, 3, &gates);
        assert_eq!(p.inputs(), &inputs[..]);
        assert_eq!(p.outputs(), &[QubitId::index(1), QubitId::index(3)]);
        assert!(p.validate().is_runnable());
    }
}
