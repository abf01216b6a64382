use mcalc::clifford::{self, Pauli, PauliWord, Verdict};
use mcalc::graph::{self, dependency_graph, entanglement_graph};
use mcalc::matrix::{c, from_rows, identity};
use mcalc::qubit::qubits;
use mcalc::{library, rewrite, sim, AnalysisError, Angle, Command, Pattern, Signal};

const TOL: f64 = 1e-9;

fn standard(p: &Pattern) -> Pattern {
    rewrite::standardize(p).unwrap().0
}

#[test]
fn entanglement_graph_of_cnot() {
    let g = entanglement_graph(&library::cnot());
    assert_eq!((g.vertex_count(), g.edge_count()), (4, 3));
    assert!(g.has_edge(&1.into(), &3.into()));
    assert!(!g.has_edge(&1.into(), &2.into()));
}

#[test]
fn dependency_graph_needs_emc() {
    assert_eq!(
        dependency_graph(&library::rx(Angle::zero())).unwrap_err(),
        AnalysisError::NotStandard
    );
}

#[test]
fn depths_of_examples() {
    let depth = |p: &Pattern| graph::depth(p).unwrap();
    assert_eq!(depth(&standard(&library::teleport(Angle::zero(), Angle::zero()))), 2);
    // the dependent measurement adds a round
    assert_eq!(depth(&standard(&library::rx(Angle::pi_frac(1, 4)))), 3);
    assert_eq!(depth(&standard(&library::ghz(5).unwrap())), 5);
    assert_eq!(
        depth(&rewrite::standardize_extended(&library::ghz(5).unwrap()).unwrap().0),
        2
    );
    assert_eq!(depth(&library::cz()), 0);
}

#[test]
fn layers_respect_dependencies() {
    let g = dependency_graph(&standard(&library::rotation(
        Angle::pi_frac(1, 4),
        Angle::pi_frac(1, 3),
        Angle::pi_frac(1, 6),
    )))
    .unwrap();
    let layers = g.layers();
    assert_eq!(layers.iter().max().copied(), Some(g.depth()));
    for e in g.graph.edge_indices() {
        let (a, b) = g.graph.edge_endpoints(e).unwrap();
        assert!(layers[a.index()] < layers[b.index()]);
    }
    assert!(g.to_dot().starts_with("digraph"));
}

#[test]
fn pauli_classification() {
    assert!(clifford::is_pauli_only(&standard(&library::teleport(Angle::zero(), Angle::zero()))).unwrap());
    assert!(!clifford::is_pauli_only(&library::j(Angle::pi_frac(1, 4))).unwrap());
    assert!(!clifford::has_dependencies(&library::cz()));
    assert!(clifford::has_dependencies(&library::h()));
    let inexact = library::j(Angle::radians(0.3));
    assert!(matches!(
        clifford::is_pauli_only(&inexact),
        Err(AnalysisError::InexactAngle(_))
    ));
}

#[test]
fn y_measurement_dependency_moves_into_corrections() {
    // M_2^y[s_1] followed by X_3^{s_2}: the s_1 dependency ends up on X_3
    let p = Pattern::new(
        qubits([1, 2, 3]),
        qubits([1]),
        qubits([3]),
        vec![
            Command::entangle(1, 2).unwrap(),
            Command::entangle(2, 3).unwrap(),
            Command::measure(1, Angle::zero()),
            Command::measure_dep(2, Angle::pi_frac(1, 2), Signal::outcome(1), Signal::zero()),
            Command::x(3, Signal::outcome(2)),
            Command::z(3, Signal::outcome(1)),
        ],
    )
    .unwrap();
    let reduced = clifford::pauli_eliminate(&p).unwrap();
    let expected = [
        Command::entangle(1, 2).unwrap(),
        Command::entangle(2, 3).unwrap(),
        Command::measure(1, Angle::zero()),
        Command::measure(2, Angle::pi_frac(1, 2)),
        Command::x(3, Signal::sum(false, [1, 2])),
        Command::z(3, Signal::outcome(1)),
    ];
    assert_eq!(reduced.commands(), &expected[..]);
    let before = sim::extract_unitary::<f64>(&p, TOL).unwrap();
    let after = sim::extract_unitary::<f64>(&reduced, TOL).unwrap();
    assert!(mcalc::matrix::equal_up_to_phase(&before, &after, TOL));
    assert!(graph::depth(&reduced).unwrap() <= 2);
}

#[test]
fn cnot_measurements_are_already_independent() {
    let s = standard(&library::cnot());
    let reduced = clifford::pauli_eliminate(&s).unwrap();
    assert_eq!(reduced, s);
}

#[test]
fn elimination_refuses_non_pauli() {
    let s = standard(&library::rx(Angle::pi_frac(1, 4)));
    assert_eq!(clifford::pauli_eliminate(&s).unwrap_err(), AnalysisError::NotPauliOnly);
    assert_eq!(
        clifford::pauli_eliminate(&library::rx(Angle::zero())).unwrap_err(),
        AnalysisError::NotStandard
    );
}

#[test]
fn clifford_membership() {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let h = from_rows(&[&[c(r, 0.0), c(r, 0.0)], &[c(r, 0.0), c(-r, 0.0)]]);
    assert!(clifford::is_clifford(&h, TOL).unwrap());
    let s = from_rows(&[&[c(1.0, 0.0), c(0.0, 0.0)], &[c(0.0, 0.0), c(0.0, 1.0)]]);
    assert!(clifford::is_clifford(&s, TOL).unwrap());
    // global phase and Pauli factors do not matter
    let ph = s.mapv(|z| z * num_complex::Complex::from_polar(1.0, 0.3));
    assert!(clifford::is_clifford(&ph, TOL).unwrap());
    let x = PauliWord::single(1, Pauli::X).to_matrix::<f64>(&qubits([1]));
    assert!(clifford::is_clifford(&x.dot(&s), TOL).unwrap());
    let t = from_rows(&[
        &[c(1.0, 0.0), c(0.0, 0.0)],
        &[
            c(0.0, 0.0),
            num_complex::Complex::from_polar(1.0, 0.25 * std::f64::consts::PI),
        ],
    ]);
    assert!(!clifford::is_clifford(&t, TOL).unwrap());
    assert_eq!(
        clifford::is_clifford(&(identity::<f64>(2) * c(2.0, 0.0)), TOL).unwrap_err(),
        AnalysisError::NotUnitary
    );
    assert!(matches!(
        clifford::is_clifford(&identity::<f64>(16), TOL),
        Err(AnalysisError::BadShape(..))
    ));
}

#[test]
fn theorem_report_over_the_suite() {
    let report = clifford::verify_no_dependency_theorems(&library::clifford_suite(), TOL);
    assert!(
        report
            .iter()
            .all(|r| !matches!(r.verdict, Verdict::Fail | Verdict::Error(_))),
        "{report:?}"
    );
    let j = report
        .iter()
        .find(|r| r.pattern == "j(pi/4)" && r.theorem == "no-dependency")
        .unwrap();
    assert_eq!(j.verdict, Verdict::Exempt { clifford: false });
    assert_eq!(j.to_string(), "j(pi/4) no-dependency: EXEMPT (non-clifford)");
    let free = report
        .iter()
        .find(|r| r.pattern == "corrections" && r.theorem == "no-dependency")
        .unwrap();
    assert_eq!(free.verdict, Verdict::Pass);
    // at least one dependent non-Pauli pattern is not Clifford
    assert!(report.iter().any(|r| r.verdict == Verdict::Exempt { clifford: false }));
}
