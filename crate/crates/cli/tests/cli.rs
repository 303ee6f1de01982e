use std::process::{Command, Output};

use ncalg::alphabet::w;
use ncalg::automata::{from_json, LinearRepresentation};
use ncalg::ring::{qi, Q};
use ncalg::series::{parse_poly, NCPoly, Truncated};

fn ncalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncalg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn expand_prints_the_polynomial_grammar() {
    let o = ncalg(&["expand", "x0 shuffle x1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1*x0.x1 + 1*x1.x0\n");
    let o = ncalg(&["expand", "(x0.x1)*", "--max-length", "4"]);
    assert_eq!(stdout(&o), "1 + 1*x0.x1 + 1*x0.x1.x0.x1\n");
}

#[test]
fn emitted_polynomials_parse_back() {
    for (expr, ring) in [
        ("(x0 - 1/2*x1)* shuffle (3*x1)*", "Q"),
        ("(-t^2*x0.x1)* shuffle (t^2*x0.x1)*", "Q[t]"),
        ("(y1 + 2*y2)* stuffle (y2/3)*", "Q"),
    ] {
        let o = ncalg(&["expand", expr, "--max-length", "5", "--ring", ring]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let text = stdout(&o);
        let again = ncalg(&["expand", text.trim(), "--ring", ring]);
        assert_eq!(stdout(&again), text, "{expr}");
    }
    // The Q[t] expansion against the product of the two series.
    let o = ncalg(&["expand", "(-t^2*x0.x1)* shuffle (t^2*x0.x1)*", "--max-length", "8", "--ring", "Q[t]"]);
    let p: NCPoly<ncalg::ring::UPoly> = parse_poly(stdout(&o).trim()).unwrap();
    let t4 = ncalg::ring::UPoly::monomial(qi(-4), 4);
    assert_eq!(p.coeff(&w("x0.x0.x1.x1")), t4);
    assert_eq!(p.coeff(&w("x0.x1")), ncalg::ring::UPoly::new(vec![]));
}

#[test]
fn op_and_star_match_series_arithmetic() {
    let o = ncalg(&["op", "shuffle", "(x0 + 2*x1)*", "x1.x0", "--max-length", "5"]);
    let p: NCPoly<Q> = parse_poly(stdout(&o).trim()).unwrap();
    let a = Truncated::new(
        NCPoly::from_terms((0..=5).flat_map(|n| {
            ncalg::automata::words_over(&[ncalg::alphabet::x(0), ncalg::alphabet::x(1)], n)
                .into_iter()
                .filter(move |u| u.len() == n)
                .map(|u| {
                    let c = u.letters().iter().filter(|&&l| l == ncalg::alphabet::x(1)).count();
                    (u, qi(1 << c))
                })
        })),
        5,
    );
    let expected = a.shuffle(&Truncated::new(NCPoly::word(w("x1.x0")), 5));
    assert_eq!(&p, expected.poly());

    let o = ncalg(&["star", "x0.x1"]);
    let r: LinearRepresentation<Q> = from_json(&stdout(&o)).unwrap();
    assert_eq!(r.dim(), 2);
    assert_eq!(r.coeff(&w("x0.x1.x0.x1")), qi(1));
    let o = ncalg(&["star", "1 + x0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("constant term"));
}

#[test]
fn identity_checks() {
    let holds = [
        ("(-1*x0.x1)* shuffle (1*x0.x1)*", "(-4*x0.x0.x1.x1)*", "Q"),
        ("(-t^2*x0.x1)* shuffle (t^2*x0.x1)*", "(-4*t^4*x0.x0.x1.x1)*", "Q[t]"),
        ("(y1)* stuffle (y1)*", "(2*y1 + y2)*", "Q"),
        ("(2*y1)* stuffle (3*y2)*", "(2*y1 + 3*y2 + 6*y3)*", "Q"),
        ("(-t^2*y2)* stuffle (t^2*y2)*", "(-t^4*y4)*", "Q[t]"),
        ("(x0 + 2*x1)* shuffle (3*x0 - x1)*", "(4*x0 + x1)*", "Q"),
        ("(1/z*x0)* shuffle (x0/(1-z))*", "(1/(z-z^2)*x0)*", "Q(z)"),
    ];
    for (lhs, rhs, ring) in holds {
        let o = ncalg(&["check-identity", lhs, rhs, "--ring", ring]);
        assert_eq!(o.status.code(), Some(0), "{lhs} = {rhs}: {}{}", stdout(&o), stderr(&o));
        assert_eq!(stdout(&o), "identity holds exactly\n");
    }
    let o = ncalg(&["check-identity", "(-t^2*y2)* stuffle (t^2*y2)*", "(-4*t^4*y4)*", "--ring", "Q[t]"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "identity fails at y4: -z^4 vs -4*z^4\n");
    let o = ncalg(&["check-identity", "x0 shuffle x1", "x0.x1 + x1.x0", "--max-length", "3"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "identity holds up to length 3\n"));
}

#[test]
fn classification() {
    for (expr, class) in [("(x0 + x1)*", "exchangeable"), ("x0.x1", "nilpotent"), ("(x0.x1)*", "general")] {
        let o = ncalg(&["classify", expr]);
        assert_eq!(stdout(&o), format!("{class}\n"), "{expr}");
    }
}

#[test]
fn minimize_collapses_equal_stars() {
    let o = ncalg(&["minimize", "x0* shuffle x0*"]);
    let r: LinearRepresentation<Q> = from_json(&stdout(&o)).unwrap();
    assert_eq!(r.dim(), 1);
    assert_eq!(r.coeff(&w("x0.x0.x0")), qi(8));
}

#[test]
fn random_operands_follow_the_seed() {
    let a = stdout(&ncalg(&["minimize", "random:3", "--seed", "7"]));
    let b = stdout(&ncalg(&["minimize", "random:3", "--seed", "7"]));
    let c = stdout(&ncalg(&["minimize", "random:3", "--seed", "8"]));
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn bases_table() {
    let o = ncalg(&["bases", "--max-length", "3"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 2 + 4 + 8);
    assert_eq!(lines[0], "1\t1\t1");
    assert_eq!(lines[4], "x0.x1\t1*x0.x1 - 1*x1.x0\t1*x0.x1");
    let o = ncalg(&["bases", "--alphabet", "y", "--max-length", "2"]);
    assert_eq!(stdout(&o), "1\t1\t1\t1\t1\ny1\t1*y1\t1*y1\t1*y1\t1*y1\ny2\t1*y2\t1*y2\t1*y2 - 1/2*y1.y1\t1*y2\ny1.y1\t1*y1.y1\t1*y1.y1\t1*y1.y1\t1/2*y2 + 1*y1.y1\n");
}

fn table(text: &str) -> Vec<Vec<String>> {
    text.lines().map(|l| l.split('\t').map(str::to_string).collect()).collect()
}

#[test]
fn chen_table() {
    let o = ncalg(&["chen", "--inputs", "x0=1/z, x1=1/(1-z)", "--z", "0.5", "--max-length", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = table(&stdout(&o));
    assert_eq!(rows[0], ["word", "value", "error"]);
    let words: Vec<&str> = rows[1..].iter().map(|r| r[0].as_str()).collect();
    assert_eq!(words, ["1", "x0", "x1", "x0.x0", "x0.x1", "x1.x0", "x1.x1"]);
    assert_eq!(rows[2][1], "divergent");
    let ln2: f64 = rows[3][1].parse().unwrap();
    assert!((ln2 - 2f64.ln()).abs() < 1e-12);
    // <C, x0 x1> = Li2(1/2) = π²/12 − ln²2/2.
    let li2: f64 = rows[5][1].parse().unwrap();
    let pi = std::f64::consts::PI;
    assert!((li2 - (pi * pi / 12.0 - 2f64.ln().powi(2) / 2.0)).abs() < 1e-10);
    let o = ncalg(&["chen", "--inputs", "x0=1/(z-1/4)", "--z", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn pairing_and_ode() {
    let o = ncalg(&["pair", "--rep", "x1*", "--inputs", "x1=1/(1-z)", "--z", "0.5", "--max-length", "25"]);
    let rows = table(&stdout(&o));
    let get = |k: &str| rows.iter().find(|r| r[0] == k).unwrap()[1].parse::<f64>().unwrap();
    assert!((get("series") - 2.0).abs() < 1e-9);
    assert!((get("ode") - 2.0).abs() < 1e-9);
    assert!(get("tail") < 1e-9);
    let o = ncalg(&["pair", "--rep", "x0*", "--inputs", "x0=1/z", "--z0", "0.5", "--z", "1"]);
    assert_eq!(o.status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("rep.json");
    std::fs::write(&file, stdout(&ncalg(&["star", "x1"]))).unwrap();
    let o = ncalg(&["derive-ode", "--rep", file.to_str().unwrap(), "--inputs", "x1=1/(1-z)"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "(1-z)*y' - y = 0\n"));
    let o = ncalg(&["derive-ode", "--rep", "(x0.x1)*", "--inputs", "x0=1/z, x1=1/(1-z)"]);
    assert_eq!(stdout(&o), "(z-z^2)*y'' + (1-z)*y' - y = 0\n");
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["expand", "x0 +"][..],
        &["bogus"],
        &["expand", "(x0)*"],
        &["expand", "x0", "--ring", "R"],
        &["chen", "--inputs", "x0=1"],
        &["chen", "--inputs", "x0=1", "--z", "0"],
        &["derive-ode", "--rep", "x0*", "--inputs", "x1=1/z"],
        &["minimize", "random:two"],
    ] {
        let o = ncalg(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!stderr(&o).is_empty());
    }
    let o = ncalg(&["expand", "x0 + + x1"]);
    assert!(stderr(&o).contains("byte 5"));
}

#[test]
fn output_is_byte_stable() {
    let args = ["op", "stuffle", "(y1 - y2)*", "(1/2*y1)*", "--max-length", "4"];
    assert_eq!(ncalg(&args).stdout, ncalg(&args).stdout);
    let args = ["star", "x0.x1 - 2*x1"];
    assert_eq!(ncalg(&args).stdout, ncalg(&args).stdout);
}
