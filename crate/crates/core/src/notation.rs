//! Right-to-left rendering in the customary one-way notation, e.g.
//! `X_3^{s_2} Z_3^{s_1} M_2^x M_1^x E_23 E_12` (rightmost runs first).

use itertools::Itertools;

use crate::angle::Angle;
use crate::command::Command;
use crate::qubit::QubitId;
use crate::signal::Signal;

fn sub(q: &QubitId) -> String {
    if q.is_single_char() {
        format!("_{q}")
    } else {
        format!("_{{{q}}}")
    }
}

fn signal(s: &Signal) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<String> = Vec::new();
    if s.constant() {
        terms.push("1".into());
    }
    terms.extend(s.support().iter().map(|q| format!("s{}", sub(q))));
    terms.join("+")
}

fn angle(a: &Angle) -> String {
    if a.is_zero() {
        "x".into()
    } else if a.is_half_pi() {
        "y".into()
    } else {
        format!("{{{}}}", a.to_string().replace(' ', ""))
    }
}

fn correction(name: char, q: &QubitId, s: &Signal) -> String {
    if s.is_constant() && s.constant() {
        format!("{name}{}", sub(q))
    } else {
        format!("{name}{}^{{{}}}", sub(q), signal(s))
    }
}

pub fn command(c: &Command) -> String {
    match c {
        Command::E(i, j) => {
            if i.is_single_char() && j.is_single_char() {
                format!("E_{i}{j}")
            } else {
                format!("E_{{{i},{j}}}")
            }
        }
        Command::M(m) => {
            let core = format!("M{}^{}", sub(&m.qubit), angle(&m.angle));
            match (m.s.is_zero(), m.t.is_zero()) {
                (true, true) => core,
                (false, true) => format!("[{core}]^{{{}}}", signal(&m.s)),
                (true, false) => format!("^{{{}}}[{core}]", signal(&m.t)),
                (false, false) => format!("^{{{}}}[{core}]^{{{}}}", signal(&m.t), signal(&m.s)),
            }
        }
        Command::X(q, s) => correction('X', q, s),
        Command::Z(q, s) => correction('Z', q, s),
        Command::S(q, s) => format!("S{}^{{{}}}", sub(q), signal(s)),
    }
}

/// Renders an execution-order slice right to left.
pub fn sequence(commands: &[Command]) -> String {
    commands.iter().rev().map(command).join(" ")
}
