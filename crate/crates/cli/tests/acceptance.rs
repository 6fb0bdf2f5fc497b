use std::collections::HashSet;
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use superlambda::bridge::{all_shapes, lattice_sweep, string_quiver};
use superlambda::cc::{equivalence_sweep, flip_sign_check, ptolemy_sweep, quad_of_arc, ptolemy_check};
use superlambda::io::read_triangulation;
use superlambda::polygon::{all_diagonals, all_triangulations, validate};
use superlambda::repr::{index_monomial, index_oracle, integer_exponents, module_of_arc, submodules};
use superlambda::snake::build_snake;
use superlambda::{Algebra, Dir, HalfMonomial, OrientedTriangulation, Quiver, SnakeGraph, SuperExpr};

type Criterion = (&'static str, fn() -> (bool, String));

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_superlambda")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn load(name: &str) -> OrientedTriangulation {
    let text = std::fs::read_to_string(data(name)).unwrap();
    read_triangulation(&text).unwrap()
}

fn mono(a: &Arc<Algebra>, exp2: &[i32]) -> SuperExpr {
    SuperExpr::monomial(a, BigInt::from(1), HalfMonomial::from_exp2(exp2.to_vec()))
}

fn theta_word(a: &Arc<Algebra>, ids: &[usize]) -> SuperExpr {
    ids.iter()
        .fold(SuperExpr::one(a), |acc, &i| acc.mul(&SuperExpr::theta(a, i).unwrap()).unwrap())
}

fn total(parts: Vec<SuperExpr>) -> SuperExpr {
    let a = parts[0].algebra().clone();
    parts.into_iter().fold(SuperExpr::zero(&a), |acc, p| acc.add(&p).unwrap())
}

fn pentagon_golden() -> (bool, String) {
    let start = Instant::now();
    let ot = load("pentagon.json");
    let a = ot.algebra();
    let numer = total(vec![
        mono(a, &[0, 2]),
        mono(a, &[0, 1]).mul(&theta_word(a, &[2, 1])).unwrap(),
        mono(a, &[0, 0]),
        mono(a, &[1, 1]).mul(&theta_word(a, &[3, 1])).unwrap(),
        mono(a, &[1, 0]).mul(&theta_word(a, &[3, 2])).unwrap(),
        mono(a, &[2, 0]),
    ]);
    let expected = numer.div_monomial(&HalfMonomial::from_exp2(vec![2, 2]));
    let path = data("pentagon.json");
    let mut ok = true;
    for cmd in ["super-expand", "super-cc"] {
        let (code, out) = run(&[cmd, path.to_str().unwrap(), "--arc", "0,2"]);
        let got = SuperExpr::parse(a, out.trim());
        ok &= code == 0 && got.as_ref().is_ok_and(|g| *g == expected);
    }
    let secs = start.elapsed().as_secs_f64();
    (ok && secs < 1.0, format!("{} ({secs:.2}s)", expected.canonical_string()))
}

fn octagon_golden() -> (bool, String) {
    let start = Instant::now();
    let ot = load("octagon.json");
    let a = ot.algebra();
    let numer = total(
        [
            [2, 2, 0, 2, 0],
            [0, 2, 2, 0, 0],
            [2, 0, 0, 0, 0],
            [0, 0, 2, 0, 0],
            [2, 0, 2, 0, 2],
            [0, 0, 4, 0, 2],
            [0, 2, 4, 0, 2],
        ]
        .iter()
        .map(|e| mono(a, e))
        .collect(),
    );
    let expected = numer.div_monomial(&HalfMonomial::from_exp2(vec![2, 2, 2, 2, 0]));
    let (code, out) = run(&["expand", data("octagon.json").to_str().unwrap(), "--arc", "2,6"]);
    let ok = code == 0 && SuperExpr::parse(a, out.trim()).is_ok_and(|g| g == expected);
    let secs = start.elapsed().as_secs_f64();
    (ok && secs < 1.0, format!("{} terms ({secs:.2}s)", expected.len()))
}

fn route_equivalence() -> (bool, String) {
    let start = Instant::now();
    let r = equivalence_sweep(9).unwrap();
    let detail = format!(
        "cases={} passes={} failures={} ({:.1}s)",
        r.cases,
        r.passes,
        r.failures.len(),
        start.elapsed().as_secs_f64()
    );
    (r.ok() && r.cases > 0, detail)
}

fn snakes_from_triangulations(max_tiles: usize) -> Vec<SnakeGraph> {
    let mut seen: HashSet<Vec<Dir>> = HashSet::new();
    let mut out = Vec::new();
    for v in 5..=9 {
        for t in all_triangulations(v) {
            let ot = t.orient();
            for (p, q) in all_diagonals(v) {
                if ot.arc_label(p, q).is_some() {
                    continue;
                }
                let g = build_snake(&ot, p, q).unwrap();
                if g.len() <= max_tiles && seen.insert(g.dirs().to_vec()) {
                    let faces: Vec<usize> = (1..=g.len()).collect();
                    out.push(SnakeGraph::from_shape(&faces, g.dirs()));
                }
            }
        }
    }
    out
}

fn lattice_bijection() -> (bool, String) {
    let graphs = snakes_from_triangulations(6);
    let r = lattice_sweep(&graphs, &[2]).unwrap();
    let shapes: usize = (1..=6).map(|k| all_shapes(k).len()).sum();
    let detail = format!("shapes={} of {shapes} passes={} failures={}", r.cases, r.passes, r.failures.len());
    (r.ok() && r.cases == shapes, detail)
}

fn counting() -> (bool, String) {
    let mut ok = true;
    let mut checked = 0;
    for k in 1..=4 {
        for g in all_shapes(k) {
            let q = string_quiver(&g);
            for d in 2..=4 {
                ok &= g.enumerate_covers(d).nodes.len() == submodules(&q, (1, k), d).len();
                checked += 1;
            }
        }
    }
    let pentagon = data("pentagon.json");
    let (c2, out2) = run(&["count", pentagon.to_str().unwrap(), "--arc", "0,2", "--d", "2"]);
    let (c4, out4) = run(&["count", pentagon.to_str().unwrap(), "--arc", "0,2", "--d", "4"]);
    let pairs = (0..=4).flat_map(|a| (a..=4).map(move |b| (a, b))).count();
    ok &= c2 == 0 && out2.trim() == "dimers=6 submodules=6 equal=true";
    ok &= c4 == 0 && out4.trim() == format!("dimers={pairs} submodules={pairs} equal=true");
    (ok && pairs == 15, format!("{checked} shape/d pairs, {} | {}", out2.trim(), out4.trim()))
}

fn ordering_equality() -> (bool, String) {
    let mut count = 0;
    let mut ok = true;
    for v in 4..=12 {
        for t in all_triangulations(v) {
            ok &= t.positive_order() == t.positive_order_inductive();
            count += 1;
        }
    }
    let fan = validate(8, &[(0, 2), (2, 7), (3, 7), (3, 6), (3, 5)], Some((1, 4))).unwrap();
    let order = fan.positive_order().order;
    ok &= order == vec![3, 6, 5, 4, 2, 1];
    let text: Vec<String> = order.iter().map(|i| format!("θ{i}")).collect();
    (ok, format!("{count} triangulations, fan octagon {}", text.join(">")))
}

fn index_consistency() -> (bool, String) {
    let mut count = 0;
    let mut ok = true;
    for v in 5..=9 {
        for t in all_triangulations(v) {
            let ot = t.orient();
            let q = Quiver::of(&ot);
            for (p, r) in all_diagonals(v) {
                if ot.arc_label(p, r).is_some() {
                    continue;
                }
                let m = module_of_arc(&ot, p, r).unwrap();
                let ind = integer_exponents(&index_monomial(&ot, p, r).unwrap());
                ok &= ind.is_ok_and(|e| e == index_oracle(&q, m.support));
                count += 1;
            }
        }
    }
    let pentagon = load("pentagon.json");
    ok &= index_monomial(&pentagon, 0, 2).unwrap() == HalfMonomial::from_exp2(vec![0, -2]);
    (ok, format!("{count} string modules, pentagon x2^(-1)"))
}

fn super_ptolemy() -> (bool, String) {
    let r = ptolemy_sweep(9).unwrap();
    let pentagon = load("pentagon.json");
    let mut ok = r.ok();
    for label in 1..=pentagon.n() {
        ok &= ptolemy_check(&pentagon, quad_of_arc(&pentagon, label)).unwrap().pass;
        let f = flip_sign_check(&pentagon, label).unwrap();
        ok &= f.product_invariant && f.double_flip_matches && f.double_flip_spin_equivalent;
    }
    (ok, format!("cases={} passes={} failures={}", r.cases, r.passes, r.failures.len()))
}

fn random_expr(rng: &mut ChaCha8Rng, a: &Arc<Algebra>) -> SuperExpr {
    let n = rng.gen_range(0..4);
    let mut acc = SuperExpr::zero(a);
    for _ in 0..n {
        let exp2: Vec<i32> = (0..a.nvars()).map(|_| rng.gen_range(-4..=4)).collect();
        let mut ids: Vec<usize> = (1..=a.nthetas()).filter(|_| rng.gen_bool(0.4)).collect();
        ids.shuffle(rng);
        let c = BigInt::from(rng.gen_range(-3i64..=3));
        let term = SuperExpr::monomial(a, c, HalfMonomial::from_exp2(exp2));
        acc = acc.add(&term.mul(&theta_word(a, &ids)).unwrap()).unwrap();
    }
    acc
}

fn ring_properties() -> (bool, String) {
    let start = Instant::now();
    let a = Algebra::standard(3, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checks = 0;
    let mut failures = 0;
    let mut check = |ok: bool| {
        checks += 1;
        if !ok {
            failures += 1;
        }
    };
    for _ in 0..2000 {
        let (x, y, z) = (random_expr(&mut rng, &a), random_expr(&mut rng, &a), random_expr(&mut rng, &a));
        check(x.mul(&y).unwrap().mul(&z).unwrap() == x.mul(&y.mul(&z).unwrap()).unwrap());

        let (xo, yo) = (x.odd_part(), y.odd_part());
        check(xo.mul(&yo).unwrap() == yo.mul(&xo).unwrap().neg());

        let i = rng.gen_range(1..=4);
        let t = SuperExpr::theta(&a, i).unwrap();
        check(t.mul(&t).unwrap().is_zero() && xo.mul(&xo).unwrap().is_zero());

        let m = HalfMonomial::from_exp2((0..3).map(|_| rng.gen_range(-5..=5)).collect());
        let inverse = HalfMonomial::from_exp2(m.exp2.iter().map(|e| -e).collect());
        let lhs = x.mul(&SuperExpr::monomial(&a, BigInt::from(1), m.clone())).unwrap();
        check(lhs.div_monomial(&m) == x && lhs.mul_monomial(&inverse) == x);

        let even = HalfMonomial::from_exp2((0..3).map(|_| 2 * rng.gen_range(-5..=5)).collect());
        check(even.sqrt().is_ok_and(|r| r.mul(&r) == even));
    }
    let mut ids = vec![1, 2, 3, 4];
    ids.shuffle(&mut rng);
    let inversions = (0..4)
        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
        .filter(|&(i, j)| ids[i] < ids[j])
        .count();
    let sign = BigInt::from(if inversions % 2 == 0 { 1 } else { -1 });
    let sign_ok = theta_word(&a, &ids) == theta_word(&a, &[4, 3, 2, 1]).scale(&sign);
    let secs = start.elapsed().as_secs_f64();
    (
        failures == 0 && sign_ok && checks >= 10_000 && secs < 10.0,
        format!("{checks} checks, {failures} failures ({secs:.2}s)"),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("pentagon golden", pentagon_golden),
        ("octagon classical golden", octagon_golden),
        ("route equivalence", route_equivalence),
        ("lattice bijection", lattice_bijection),
        ("counting", counting),
        ("ordering equality", ordering_equality),
        ("index consistency", index_consistency),
        ("super ptolemy", super_ptolemy),
        ("ring properties", ring_properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (ok, detail) = f();
        println!("criterion {}: {} {name}: {detail}", i + 1, if ok { "PASS" } else { "FAIL" });
        failed += usize::from(!ok);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
