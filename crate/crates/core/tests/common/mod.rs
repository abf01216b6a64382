#![allow(dead_code)]

use mcalc::{clifford, library, notation, rewrite, Angle, Pattern};

/// Standard forms, right to left, of the library examples. Angles are the
/// values at `α = π/4, β = π/3, γ = 5π/6, δ = π/6`.
pub struct Golden {
    pub name: &'static str,
    pub pattern: fn() -> Pattern,
    pub form: Form,
    pub expected: &'static str,
}

#[derive(Clone, Copy, Debug)]
pub enum Form {
    Standard,
    Extended,
    PauliEliminated,
}

pub fn alpha() -> Angle {
    Angle::pi_frac(1, 4)
}
pub fn beta() -> Angle {
    Angle::pi_frac(1, 3)
}
pub fn gamma() -> Angle {
    Angle::pi_frac(5, 6)
}
pub fn delta() -> Angle {
    Angle::pi_frac(1, 6)
}

pub const TELEPORT: &str = "X_3^{s_2} Z_3^{s_1} M_2^x M_1^x E_23 E_12";

pub fn goldens() -> Vec<Golden> {
    vec![
        Golden {
            name: "teleport",
            pattern: || library::teleport(Angle::zero(), Angle::zero()),
            form: Form::Standard,
            expected: TELEPORT,
        },
        // M_2^{-α} with α = π/4
        Golden {
            name: "rx",
            pattern: || library::rx(alpha()),
            form: Form::Standard,
            expected: "X_3^{s_2} Z_3^{s_1} [M_2^{7/4pi}]^{s_1} M_1^x E_23 E_12",
        },
        Golden {
            name: "rz",
            pattern: || library::rz(alpha()),
            form: Form::Standard,
            expected: "X_3^{s_2} Z_3^{s_1} M_2^x M_1^{7/4pi} E_23 E_12",
        },
        Golden {
            name: "rz5",
            pattern: || library::rz5(alpha()),
            form: Form::Extended,
            expected: "X_5^{s_2+s_4} Z_5^{s_1+s_3} M_4^x [M_3^{7/4pi}]^{s_2} M_2^x M_1^x E_45 E_34 E_23 E_12",
        },
        Golden {
            name: "p_half",
            pattern: library::p_half,
            form: Form::PauliEliminated,
            expected: "X_3^{s_2} Z_3^{1+s_1} M_2^x M_1^y E_23 E_12",
        },
        // -α = 7π/4, -β = 5π/3, -γ = 7π/6
        Golden {
            name: "rotation",
            pattern: || library::rotation(alpha(), beta(), gamma()),
            form: Form::Extended,
            expected: "X_5^{s_2+s_4} Z_5^{s_1+s_3} M_4^x [M_3^{7/4pi}]^{s_2} [M_2^{5/3pi}]^{s_1} M_1^{7/6pi} \
                       E_45 E_34 E_23 E_12",
        },
        Golden {
            name: "rotation before shifting",
            pattern: || library::rotation(alpha(), beta(), gamma()),
            form: Form::Standard,
            expected: "X_5^{s_4} Z_5^{s_3} ^{s_2}[M_4^x] ^{s_1}[M_3^{7/4pi}]^{s_2} [M_2^{5/3pi}]^{s_1} M_1^{7/6pi} \
                       E_45 E_34 E_23 E_12",
        },
        // Z_1 is created before Z_4 and entanglements never pass each other
        Golden {
            name: "cnot",
            pattern: library::cnot,
            form: Form::Standard,
            expected: "X_4^{s_3} Z_1^{s_2} Z_4^{s_2} M_3^x M_2^x E_34 E_13 E_23",
        },
        Golden {
            name: "ghz3",
            pattern: || library::ghz(3).unwrap(),
            form: Form::Extended,
            expected: "X_{3'}^{s_2+s_3} X_{2'}^{s_2} M_3^x M_2^x E_{3,3'} E_{2',3} E_{2,2'} E_12",
        },
        Golden {
            name: "ghz4",
            pattern: || library::ghz(4).unwrap(),
            form: Form::Extended,
            expected: "X_{4'}^{s_2+s_3+s_4} X_{3'}^{s_2+s_3} X_{2'}^{s_2} M_4^x M_3^x M_2^x \
                       E_{4,4'} E_{3',4} E_{3,3'} E_{2',3} E_{2,2'} E_12",
        },
        Golden {
            name: "ghz5",
            pattern: || library::ghz(5).unwrap(),
            form: Form::Extended,
            expected: "X_{5'}^{s_2+s_3+s_4+s_5} X_{4'}^{s_2+s_3+s_4} X_{3'}^{s_2+s_3} X_{2'}^{s_2} \
                       M_5^x M_4^x M_3^x M_2^x \
                       E_{5,5'} E_{4',5} E_{4,4'} E_{3',4} E_{3,3'} E_{2',3} E_{2,2'} E_12",
        },
        // -α' = -(α + (β+γ+δ)/2) = 13π/12, (β-δ+π)/2 = 7π/12, (π+δ+β)/2 = 3π/4,
        // -γ/2 = 19π/12, γ/2 = 5π/12, -β-π = 2π/3
        Golden {
            name: "cu",
            pattern: || library::controlled_u(alpha(), beta(), gamma(), delta()),
            form: Form::Extended,
            expected: "X_C^{s_B} Z_C^{s_A+s_c+s_e} X_k^{s_b+s_d+s_f+s_h+s_j} Z_k^{s_a+s_c+s_e+s_g+s_i} \
                       M_B^x M_A^{13/12pi} M_j^x [M_i^{2/3pi}]^{s_b+s_d+s_f+s_h} \
                       [M_h^{5/12pi}]^{s_a+s_c+s_e+s_g} [M_g^y]^{s_b+s_d+s_f} \
                       M_f^x [M_e^{3/2pi}]^{s_b+s_d} [M_d^{19/12pi}]^{s_a+s_c} [M_c^{3/4pi}]^{s_b} M_b^x M_a^{7/12pi} \
                       E_BC E_AB E_jk E_ij E_hi E_gh E_fg E_Af E_ef E_de E_cd E_bc E_Ab E_ab",
        },
    ]
}

pub fn render(g: &Golden) -> String {
    let p = (g.pattern)();
    let out = match g.form {
        Form::Standard => rewrite::standardize(&p).unwrap().0,
        Form::Extended => rewrite::standardize_extended(&p).unwrap().0,
        Form::PauliEliminated => clifford::pauli_eliminate(&rewrite::standardize(&p).unwrap().0).unwrap(),
    };
    notation::sequence(out.commands())
}

pub fn tokens(s: &str) -> Vec<&str> {
    s.split_whitespace().collect()
}
