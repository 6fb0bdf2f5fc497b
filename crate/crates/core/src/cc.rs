//! The super cluster character, its classical specialization, the super
//! Ptolemy verifier and the sweeps comparing it with the dimer expansion.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polygon::{
    all_diagonals, all_triangulations, is_boundary, strictly_between, EdgeLabel,
    OrientedTriangulation, Triangulation, Vertex,
};
use crate::repr::{bilinear, index_monomial, module_of_arc, mu_of_submodule, submodules, Quiver};
use crate::snake::{classical_expansion, super_lambda_dimer};
use crate::superring::{HalfMonomial, SuperExpr};

fn require_outside(ot: &OrientedTriangulation, p: Vertex, q: Vertex) -> Result<()> {
    let v = ot.vertices();
    if p >= v || q >= v {
        return Err(Error::OutOfRangeVertex { vertex: p.max(q), v });
    }
    if p == q || is_boundary(v, p, q) {
        return Err(Error::BoundaryArc(p, q));
    }
    if ot.arc_label(p, q).is_some() {
        return Err(Error::ArcInTriangulation(p, q));
    }
    Ok(())
}

/// `X^{ind} Σ_N Π_i √x_i^{⟨S_i, e(N)⟩} μ(N)` over submodules of the induced module.
pub fn super_cc(ot: &OrientedTriangulation, p: Vertex, q: Vertex) -> Result<SuperExpr> {
    require_outside(ot, p, q)?;
    let alg = ot.algebra();
    let quiver = Quiver::of(ot);
    let m = module_of_arc(ot, p, q)?;
    let mut sum = SuperExpr::zero(alg);
    for n in submodules(&quiver, m.support, 2) {
        let exp2 = (1..=quiver.n)
            .map(|i| bilinear(&quiver, i, &n.rank) as i32)
            .collect();
        let term = SuperExpr::monomial(alg, BigInt::one(), HalfMonomial::from_exp2(exp2));
        sum = sum.add(&term.mul(&mu_of_submodule(ot, &n)?)?)?;
    }
    Ok(sum.mul_monomial(&index_monomial(ot, p, q)?))
}

/// Classical character: submodules of the module itself, no odd part.
pub fn classical_cc(ot: &OrientedTriangulation, p: Vertex, q: Vertex) -> Result<SuperExpr> {
    require_outside(ot, p, q)?;
    let alg = ot.algebra();
    let quiver = Quiver::of(ot);
    let m = module_of_arc(ot, p, q)?;
    let mut sum = SuperExpr::zero(alg);
    for n in submodules(&quiver, m.support, 1) {
        let exp2 = (1..=quiver.n)
            .map(|i| 2 * bilinear(&quiver, i, &n.rank) as i32)
            .collect();
        sum = sum.add(&SuperExpr::monomial(
            alg,
            BigInt::one(),
            HalfMonomial::from_exp2(exp2),
        ))?;
    }
    Ok(sum.mul_monomial(&index_monomial(ot, p, q)?))
}

/// Objects on which the character is evaluated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CCObject {
    Induced(Vertex, Vertex),
    ShiftedProjective(usize),
    DirectSum(Vec<CCObject>),
}

impl CCObject {
    /// Flattens nested sums.
    pub fn flatten(self) -> CCObject {
        match self {
            CCObject::DirectSum(parts) => {
                let mut flat = Vec::new();
                for p in parts {
                    match p.flatten() {
                        CCObject::DirectSum(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                CCObject::DirectSum(flat)
            }
            other => other,
        }
    }
}

pub fn cc_object(ot: &OrientedTriangulation, e: &CCObject) -> Result<SuperExpr> {
    match e {
        CCObject::ShiftedProjective(i) => {
            if *i == 0 || *i > ot.n() {
                return Err(Error::Input(format!("no arc labelled {i}")));
            }
            Ok(SuperExpr::var(ot.algebra(), *i))
        }
        CCObject::Induced(p, q) => super_cc(ot, *p, *q),
        CCObject::DirectSum(parts) => {
            let mut acc = SuperExpr::one(ot.algebra());
            for part in parts {
                acc = acc.mul(&cc_object(ot, part)?)?;
            }
            Ok(acc)
        }
    }
}

/// Lambda length of any vertex pair: 1 on the boundary, `x_i` on arcs.
pub fn lambda(ot: &OrientedTriangulation, p: Vertex, q: Vertex) -> Result<SuperExpr> {
    match ot.label_of(p, q) {
        Some(EdgeLabel::Boundary(..)) => Ok(SuperExpr::one(ot.algebra())),
        Some(EdgeLabel::Arc(i)) => Ok(SuperExpr::var(ot.algebra(), i)),
        None => super_cc(ot, p, q),
    }
}

fn side_monomial(ot: &OrientedTriangulation, p: Vertex, q: Vertex) -> Result<HalfMonomial> {
    match ot.label_of(p, q) {
        Some(EdgeLabel::Boundary(..)) => Ok(HalfMonomial::one(ot.n())),
        Some(EdgeLabel::Arc(i)) => Ok(HalfMonomial::var(ot.n(), i)),
        None => Err(Error::NonMonomialConfiguration),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PtolemyReport {
    pub quad: [Vertex; 4],
    pub e: (Vertex, Vertex),
    pub f: (Vertex, Vertex),
    pub lhs_cc: String,
    pub lhs_dimer: String,
    pub rhs: String,
    pub pass: bool,
}

/// Checks `x_e x_f = ac + bd + √(abcd) σθ` on a quadrilateral made of two
/// triangles of the triangulation.
pub fn ptolemy_check(ot: &OrientedTriangulation, quad: [Vertex; 4]) -> Result<PtolemyReport> {
    let v = ot.vertices();
    let mut qv = quad;
    qv.sort();
    if qv.windows(2).any(|w| w[0] == w[1]) || qv[3] >= v {
        return Err(Error::Input(format!("{quad:?} is not a quadrilateral")));
    }
    let sides: Vec<HalfMonomial> = (0..4)
        .map(|i| side_monomial(ot, qv[i], qv[(i + 1) % 4]))
        .collect::<Result<_>>()?;
    let diag = [(qv[0], qv[2]), (qv[1], qv[3])];
    let (e, f) = match (ot.arc_label(diag[0].0, diag[0].1), ot.arc_label(diag[1].0, diag[1].1)) {
        (Some(_), None) => (diag[0], diag[1]),
        (None, Some(_)) => (diag[1], diag[0]),
        _ => return Err(Error::NonMonomialConfiguration),
    };
    let alg = ot.algebra();
    let le = ot.arc_label(e.0, e.1).unwrap();
    let xe = SuperExpr::var(alg, le);
    let lhs_cc = xe.mul(&super_cc(ot, f.0, f.1)?)?;
    let lhs_dimer = xe.mul(&super_lambda_dimer(ot, f.0, f.1)?)?;
    let ac = sides[0].mul(&sides[2]);
    let bd = sides[1].mul(&sides[3]);
    let tris = ot.triangles_on(e.0, e.1);
    let pair = SuperExpr::theta_pair(alg, tris[0], tris[1])?;
    let root = ac.mul(&bd).sqrt()?;
    let rhs = SuperExpr::monomial(alg, BigInt::one(), ac)
        .add(&SuperExpr::monomial(alg, BigInt::one(), bd))?
        .add(&pair.mul_monomial(&root))?;
    Ok(PtolemyReport {
        quad: qv,
        e,
        f,
        pass: lhs_cc == rhs && lhs_dimer == rhs,
        lhs_cc: lhs_cc.canonical_string(),
        lhs_dimer: lhs_dimer.canonical_string(),
        rhs: rhs.canonical_string(),
    })
}

/// Quadrilateral around arc `label`.
pub fn quad_of_arc(ot: &OrientedTriangulation, label: usize) -> [Vertex; 4] {
    let (p, q) = ot.arc(label);
    let t = ot.triangles_on(p, q);
    [p, q, ot.apex(t[0], p, q), ot.apex(t[1], p, q)]
}

/// Flip state: numerators over `√S^k` in a fixed frame `U, L, B, R`.
#[derive(Debug, Clone)]
struct FlipState {
    top: SuperExpr,
    bottom: SuperExpr,
    k: usize,
    /// Physical vertices at frame positions U, L, B, R.
    frame: [Vertex; 4],
    /// Monomials at frame positions a = UL, b = UR, c = BR, d = LB.
    sides: [HalfMonomial; 4],
    /// Orientation sign per physical edge, keyed by unordered endpoints.
    signs: Vec<((Vertex, Vertex), i8)>,
    diagonal: (Vertex, Vertex),
}

fn key(p: Vertex, q: Vertex) -> (Vertex, Vertex) {
    (p.min(q), p.max(q))
}

impl FlipState {
    fn sign_mut(&mut self, p: Vertex, q: Vertex) -> &mut i8 {
        let k = key(p, q);
        if let Some(i) = self.signs.iter().position(|(e, _)| *e == k) {
            return &mut self.signs[i].1;
        }
        self.signs.push((k, 1));
        &mut self.signs.last_mut().unwrap().1
    }

    fn sign(&self, p: Vertex, q: Vertex) -> i8 {
        self.signs
            .iter()
            .find(|(e, _)| *e == key(p, q))
            .map_or(1, |(_, s)| *s)
    }

    fn flip(&mut self) -> Result<()> {
        let alg = self.top.algebra().clone();
        let [a, b, c, d] = self.sides.clone();
        let rbd = SuperExpr::monomial(&alg, BigInt::one(), b.mul(&d).sqrt()?);
        let rac = SuperExpr::monomial(&alg, BigInt::one(), a.mul(&c).sqrt()?);
        let new_left = self.top.mul(&rbd)?.add(&self.bottom.mul(&rac)?)?;
        let new_right = self.bottom.mul(&rbd)?.sub(&self.top.mul(&rac)?)?;
        let [u, l, bb, r] = self.frame;
        let s = self.sign_mut(u, r);
        *s = -*s;
        // the new diagonal runs U → B; record its direction against the stored key
        let dsign = if u < bb { 1 } else { -1 };
        let ks = self.sign_mut(u, bb);
        *ks = dsign;
        self.diagonal = (u, bb);
        self.frame = [l, bb, r, u];
        self.sides = [d, a, b, c];
        self.top = new_left;
        self.bottom = new_right;
        self.k += 1;
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FlipReport {
    pub arc: (Vertex, Vertex),
    pub product_invariant: bool,
    pub double_flip_matches: bool,
    pub double_flip_spin_equivalent: bool,
    pub four_flip_spin_equivalent: bool,
    /// Smallest number of flips returning every orientation and invariant.
    pub literal_period: Option<usize>,
    pub pass: bool,
}

/// Runs the flip automaton on arc `label` for eight flips.
pub fn flip_sign_check(ot: &OrientedTriangulation, label: usize) -> Result<FlipReport> {
    let v = ot.vertices();
    let alg = ot.algebra();
    let (r, l) = ot.direction(label);
    let tris = ot.triangles_on(r, l);
    let (mut top_id, mut bottom_id) = (tris[0], tris[1]);
    if !strictly_between(v, r, l, ot.apex(top_id, r, l)) {
        std::mem::swap(&mut top_id, &mut bottom_id);
    }
    let u = ot.apex(top_id, r, l);
    let b = ot.apex(bottom_id, r, l);
    let sides = [
        side_monomial(ot, u, l)?,
        side_monomial(ot, u, r)?,
        side_monomial(ot, b, r)?,
        side_monomial(ot, l, b)?,
    ];
    let theta = SuperExpr::theta(alg, top_id)?;
    let sigma = SuperExpr::theta(alg, bottom_id)?;
    let s_expr = SuperExpr::monomial(alg, BigInt::one(), sides[0].mul(&sides[2]))
        .add(&SuperExpr::monomial(alg, BigInt::one(), sides[1].mul(&sides[3])))?;
    let mut st = FlipState {
        top: theta.clone(),
        bottom: sigma.clone(),
        k: 0,
        frame: [u, l, b, r],
        sides,
        signs: Vec::new(),
        diagonal: (r, l),
    };
    let e_sign0 = if r < l { 1 } else { -1 };
    *st.sign_mut(r, l) = e_sign0;
    let start_sign = |st: &FlipState, p: Vertex, q: Vertex| {
        let s = st.sign(p, q);
        if key(p, q) == key(r, l) {
            s * e_sign0
        } else {
            s
        }
    };
    // physical values of the original top and bottom triangles at even k
    let physical = |st: &FlipState| -> Result<(SuperExpr, SuperExpr)> {
        let (t, bo) = if st.frame[0] == u {
            (st.top.clone(), st.bottom.clone())
        } else {
            (st.bottom.clone(), st.top.clone())
        };
        Ok((t, bo))
    };
    let scaled = |x: &SuperExpr, k: usize| -> Result<SuperExpr> {
        let mut out = x.clone();
        for _ in 0..k / 2 {
            out = out.mul(&s_expr)?;
        }
        Ok(out)
    };
    // ε_top, ε_bottom witnessing spin equivalence with the start
    let equivalent = |st: &FlipState| -> Result<bool> {
        let (t, bo) = physical(st)?;
        for et in [1i8, -1] {
            for eb in [1i8, -1] {
                let tv = scaled(&theta.scale(&BigInt::from(et)), st.k)?;
                let bv = scaled(&sigma.scale(&BigInt::from(eb)), st.k)?;
                let ok = t == tv
                    && bo == bv
                    && start_sign(st, u, l) == et
                    && start_sign(st, u, r) == et
                    && start_sign(st, b, r) == eb
                    && start_sign(st, l, b) == eb
                    && start_sign(st, r, l) == et * eb;
                if ok {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    };
    let literal = |st: &FlipState| -> Result<bool> {
        let (t, bo) = physical(st)?;
        Ok(t == scaled(&theta, st.k)?
            && bo == scaled(&sigma, st.k)?
            && [(u, l), (u, r), (b, r), (l, b), (r, l)]
                .iter()
                .all(|&(p, q)| start_sign(st, p, q) == 1))
    };
    let mut product_invariant = true;
    let mut double_flip_matches = false;
    let mut double_flip_spin_equivalent = false;
    let mut four_flip_spin_equivalent = false;
    let mut literal_period = None;
    for step in 1..=8 {
        let before = st.bottom.mul(&st.top)?.mul(&s_expr)?;
        st.flip()?;
        if st.bottom.mul(&st.top)? != before {
            product_invariant = false;
        }
        if step % 2 == 1 {
            continue;
        }
        if step == 2 {
            let (t, bo) = physical(&st)?;
            double_flip_matches = t == scaled(&theta.neg(), 2)?
                && bo == scaled(&sigma, 2)?
                && start_sign(&st, u, l) == -1
                && start_sign(&st, u, r) == -1
                && start_sign(&st, b, r) == 1
                && start_sign(&st, l, b) == 1
                && start_sign(&st, r, l) == -1;
            double_flip_spin_equivalent = equivalent(&st)?;
        }
        if step == 4 {
            four_flip_spin_equivalent = equivalent(&st)?;
        }
        if literal_period.is_none() && literal(&st)? {
            literal_period = Some(step);
        }
    }
    let pass = product_invariant
        && double_flip_matches
        && double_flip_spin_equivalent
        && literal_period == Some(8);
    Ok(FlipReport {
        arc: (r, l),
        product_invariant,
        double_flip_matches,
        double_flip_spin_equivalent,
        four_flip_spin_equivalent,
        literal_period,
        pass,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepFailure {
    pub case: String,
    pub kind: &'static str,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SweepReport {
    pub cases: usize,
    pub passes: usize,
    pub failures: Vec<SweepFailure>,
}

impl SweepReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.cases == self.passes
    }

    pub fn record(&mut self, case: impl FnOnce() -> String, kind: &'static str, ok: bool, left: String, right: String) {
        self.cases += 1;
        if ok {
            self.passes += 1;
        } else {
            self.failures.push(SweepFailure {
                case: case(),
                kind,
                left,
                right,
            });
        }
    }

    pub fn merge(mut self, other: SweepReport) -> SweepReport {
        self.cases += other.cases;
        self.passes += other.passes;
        self.failures.extend(other.failures);
        self
    }
}

fn case_name(t: &Triangulation, arc: (Vertex, Vertex)) -> String {
    format!("v={} arcs={:?} arc={arc:?}", t.vertices(), t.arcs())
}

/// Compares both routes on every arc outside one triangulation.
pub fn compare_routes(t: &Triangulation) -> Result<SweepReport> {
    let ot = t.clone().orient();
    let mut rep = SweepReport::default();
    for (p, q) in all_diagonals(ot.vertices()) {
        if ot.arc_label(p, q).is_some() {
            continue;
        }
        let case = || case_name(t, (p, q));
        let dimer = super_lambda_dimer(&ot, p, q)?;
        let cc = super_cc(&ot, p, q)?;
        let classical = classical_expansion(&ot, p, q)?;
        let classical_cc = classical_cc(&ot, p, q)?;
        let body = dimer.body();
        rep.record(case, "super", dimer == cc, dimer.canonical_string(), cc.canonical_string());
        rep.record(
            case,
            "classical",
            classical == classical_cc,
            classical.canonical_string(),
            classical_cc.canonical_string(),
        );
        rep.record(case, "body", body == classical, body.canonical_string(), classical.canonical_string());
    }
    Ok(rep)
}

/// Ptolemy and flip checks around every arc of one triangulation.
pub fn check_quadrilaterals(t: &Triangulation) -> Result<SweepReport> {
    let ot = t.clone().orient();
    let mut rep = SweepReport::default();
    for label in 1..=ot.n() {
        let case = || case_name(t, ot.arc(label));
        let pt = ptolemy_check(&ot, quad_of_arc(&ot, label))?;
        rep.record(case, "ptolemy", pt.pass, pt.lhs_cc, pt.rhs);
        let fl = flip_sign_check(&ot, label)?;
        rep.record(case, "flip", fl.pass, format!("{fl:?}"), String::new());
    }
    Ok(rep)
}

/// Runs `check` on each triangulation in parallel, merging in input order.
pub fn sweep(
    ts: &[Triangulation],
    check: impl Fn(&Triangulation) -> Result<SweepReport> + Sync + Send,
) -> Result<SweepReport> {
    let reports: Vec<Result<SweepReport>> = ts.par_iter().map(check).collect();
    let mut total = SweepReport::default();
    for r in reports {
        total = total.merge(r?);
    }
    Ok(total)
}

/// Route equality on every triangulation with `5 ≤ v ≤ v_max`.
pub fn equivalence_sweep(v_max: usize) -> Result<SweepReport> {
    let all: Vec<Triangulation> = (5..=v_max).flat_map(all_triangulations).collect();
    sweep(&all, compare_routes)
}

/// Ptolemy and flip checks on every triangulation with `4 ≤ v ≤ v_max`.
pub fn ptolemy_sweep(v_max: usize) -> Result<SweepReport> {
    let all: Vec<Triangulation> = (4..=v_max).flat_map(all_triangulations).collect();
    sweep(&all, check_quadrilaterals)
}
