//! The graded ring `Z[x_1^{±1/2},…,x_n^{±1/2}] ⊗ Λ(θ_1,…,θ_{n+1})`.
//!
//! Even exponents are stored doubled so half-integers stay exact. Odd
//! variables are identified by their triangle id; words are kept sorted
//! larger-first with respect to a fixed total order carried by [`Algebra`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ambient data shared by all expressions of one triangulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    nvars: usize,
    /// `rank[id - 1]` is the position of θ_id in the order, 1 = largest.
    rank: Vec<u16>,
    /// `ids[r - 1]` is the θ id of rank `r`.
    ids: Vec<u16>,
}

impl Algebra {
    /// `order` lists θ ids from largest to smallest.
    pub fn new(nvars: usize, order: &[usize]) -> Result<Arc<Self>> {
        let m = order.len();
        let mut rank = vec![0u16; m];
        for (r, &id) in order.iter().enumerate() {
            if id == 0 || id > m || rank[id - 1] != 0 {
                return Err(Error::UnknownTheta(id));
            }
            rank[id - 1] = (r + 1) as u16;
        }
        let ids = order.iter().map(|&i| i as u16).collect();
        Ok(Arc::new(Algebra { nvars, rank, ids }))
    }

    /// θ_m > θ_{m-1} > … > θ_1.
    pub fn standard(nvars: usize, nthetas: usize) -> Arc<Self> {
        let order: Vec<usize> = (1..=nthetas).rev().collect();
        Self::new(nvars, &order).expect("standard order is a permutation")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn nthetas(&self) -> usize {
        self.rank.len()
    }

    /// Rank of θ_id, 1 = largest.
    pub fn rank(&self, id: usize) -> Result<u16> {
        self.rank
            .get(id.wrapping_sub(1))
            .copied()
            .ok_or(Error::UnknownTheta(id))
    }

    pub fn id_of_rank(&self, r: u16) -> usize {
        self.ids[r as usize - 1] as usize
    }

    /// θ ids from largest to smallest.
    pub fn order(&self) -> Vec<usize> {
        self.ids.iter().map(|&i| i as usize).collect()
    }
}

/// A Laurent monomial with half-integer exponents, stored doubled.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfMonomial {
    pub exp2: Vec<i32>,
}

impl HalfMonomial {
    pub fn one(n: usize) -> Self {
        HalfMonomial { exp2: vec![0; n] }
    }

    /// `x_i` for a 1-based variable index.
    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.exp2[i - 1] = 2;
        m
    }

    pub fn from_exp2(exp2: Vec<i32>) -> Self {
        HalfMonomial { exp2 }
    }

    pub fn is_one(&self) -> bool {
        self.exp2.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.exp2.len(), other.exp2.len());
        HalfMonomial {
            exp2: self.exp2.iter().zip(&other.exp2).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        HalfMonomial {
            exp2: self.exp2.iter().zip(&other.exp2).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn pow(&self, k: i32) -> Self {
        HalfMonomial {
            exp2: self.exp2.iter().map(|e| e * k).collect(),
        }
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.exp2.iter().any(|e| e % 2 != 0) {
            return Err(Error::NonRepresentableRoot(self.exp2.clone()));
        }
        Ok(HalfMonomial {
            exp2: self.exp2.iter().map(|e| e / 2).collect(),
        })
    }

    fn render(&self) -> Vec<String> {
        self.exp2
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| match (e % 2 == 0, e) {
                (_, 2) => format!("x{}", i + 1),
                (true, _) => format!("x{}^({})", i + 1, e / 2),
                (false, _) => format!("x{}^({}/2)", i + 1, e),
            })
            .collect()
    }
}

pub fn sqrt_monomial(m: &HalfMonomial) -> Result<HalfMonomial> {
    m.sqrt()
}

/// Term key; θ word holds ranks ascending, i.e. larger θ first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Key {
    thetas: Vec<u16>,
    exp2: Vec<i32>,
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.thetas
            .len()
            .cmp(&other.thetas.len())
            .then_with(|| other.thetas.cmp(&self.thetas))
            .then_with(|| self.exp2.cmp(&other.exp2))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A single normalized term, θ word given as ids larger-first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperTerm {
    pub coeff: BigInt,
    pub mono: HalfMonomial,
    pub thetas: Vec<usize>,
}

/// A normalized element of the super ring.
#[derive(Clone, PartialEq, Eq)]
pub struct SuperExpr {
    alg: Arc<Algebra>,
    terms: BTreeMap<Key, BigInt>,
}

/// Sorts a rank word ascending; returns the permutation sign or `None` on a repeat.
fn sort_word(word: &mut [u16]) -> Option<bool> {
    let mut negative = false;
    for i in 1..word.len() {
        let mut j = i;
        while j > 0 && word[j - 1] > word[j] {
            word.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
        if j > 0 && word[j - 1] == word[j] {
            return None;
        }
    }
    Some(negative)
}

impl SuperExpr {
    pub fn zero(alg: &Arc<Algebra>) -> Self {
        SuperExpr {
            alg: alg.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alg: &Arc<Algebra>) -> Self {
        Self::monomial(alg, BigInt::one(), HalfMonomial::one(alg.nvars))
    }

    pub fn integer(alg: &Arc<Algebra>, c: i64) -> Self {
        Self::monomial(alg, BigInt::from(c), HalfMonomial::one(alg.nvars))
    }

    pub fn monomial(alg: &Arc<Algebra>, coeff: BigInt, mono: HalfMonomial) -> Self {
        let mut e = Self::zero(alg);
        e.push(coeff, mono.exp2, Vec::new());
        e
    }

    /// `x_i` for a 1-based index.
    pub fn var(alg: &Arc<Algebra>, i: usize) -> Self {
        Self::monomial(alg, BigInt::one(), HalfMonomial::var(alg.nvars, i))
    }

    /// The odd generator θ_id.
    pub fn theta(alg: &Arc<Algebra>, id: usize) -> Result<Self> {
        Self::normalize(alg, vec![(BigInt::one(), HalfMonomial::one(alg.nvars), vec![id])])
    }

    /// θ_a θ_b written larger-first with coefficient +1.
    pub fn theta_pair(alg: &Arc<Algebra>, a: usize, b: usize) -> Result<Self> {
        let (ra, rb) = (alg.rank(a)?, alg.rank(b)?);
        let mut e = Self::zero(alg);
        if ra != rb {
            e.push(
                BigInt::one(),
                vec![0; alg.nvars],
                vec![ra.min(rb), ra.max(rb)],
            );
        }
        Ok(e)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    fn push(&mut self, coeff: BigInt, exp2: Vec<i32>, thetas: Vec<u16>) {
        if coeff.is_zero() {
            return;
        }
        let key = Key { thetas, exp2 };
        let entry = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Builds a normalized expression from raw terms with unordered θ ids.
    pub fn normalize(
        alg: &Arc<Algebra>,
        raw: Vec<(BigInt, HalfMonomial, Vec<usize>)>,
    ) -> Result<Self> {
        let mut e = Self::zero(alg);
        for (coeff, mono, ids) in raw {
            if mono.exp2.len() != alg.nvars {
                return Err(Error::MismatchedAlgebra {
                    expected: alg.nvars,
                    found: mono.exp2.len(),
                });
            }
            let mut word = ids
                .iter()
                .map(|&id| alg.rank(id))
                .collect::<Result<Vec<_>>>()?;
            if let Some(neg) = sort_word(&mut word) {
                e.push(if neg { -coeff } else { coeff }, mono.exp2, word);
            }
        }
        Ok(e)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.alg != other.alg {
            return Err(Error::MismatchedAlgebra {
                expected: self.alg.nvars,
                found: other.alg.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.push(c.clone(), k.exp2.clone(), k.thetas.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        SuperExpr {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.alg);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let mut word = ka.thetas.clone();
                word.extend_from_slice(&kb.thetas);
                let Some(neg) = sort_word(&mut word) else {
                    continue;
                };
                let exp2 = ka.exp2.iter().zip(&kb.exp2).map(|(a, b)| a + b).collect();
                let c = ca * cb;
                out.push(if neg { -c } else { c }, exp2, word);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(&self.alg);
        for (k, v) in &self.terms {
            out.push(v * c, k.exp2.clone(), k.thetas.clone());
        }
        out
    }

    pub fn mul_monomial(&self, m: &HalfMonomial) -> Self {
        SuperExpr {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| {
                    let exp2 = k.exp2.iter().zip(&m.exp2).map(|(a, b)| a + b).collect();
                    (
                        Key {
                            thetas: k.thetas.clone(),
                            exp2,
                        },
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    pub fn div_monomial(&self, m: &HalfMonomial) -> Self {
        self.mul_monomial(&m.pow(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> Vec<SuperTerm> {
        self.terms
            .iter()
            .map(|(k, c)| SuperTerm {
                coeff: c.clone(),
                mono: HalfMonomial::from_exp2(k.exp2.clone()),
                thetas: k.thetas.iter().map(|&r| self.alg.id_of_rank(r)).collect(),
            })
            .collect()
    }

    /// Part with θ words of even length.
    pub fn even_part(&self) -> Self {
        self.filter(|k| k.thetas.len() % 2 == 0)
    }

    pub fn odd_part(&self) -> Self {
        self.filter(|k| k.thetas.len() % 2 == 1)
    }

    /// Drops every term containing a θ.
    pub fn body(&self) -> Self {
        self.filter(|k| k.thetas.is_empty())
    }

    fn filter(&self, keep: impl Fn(&Key) -> bool) -> Self {
        SuperExpr {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.even_part().is_zero() || self.odd_part().is_zero()
    }

    /// Parity of a homogeneous expression, `true` for odd.
    pub fn is_odd(&self) -> bool {
        !self.odd_part().is_zero() && self.even_part().is_zero()
    }

    pub fn canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut factors = HalfMonomial::from_exp2(k.exp2.clone()).render();
                if !k.thetas.is_empty() {
                    factors.push(
                        k.thetas
                            .iter()
                            .map(|&r| format!("θ{}", self.alg.id_of_rank(r)))
                            .collect(),
                    );
                }
                let body = factors.join("*");
                if body.is_empty() {
                    c.to_string()
                } else if c.is_one() {
                    body
                } else if (-c).is_one() {
                    format!("-{body}")
                } else {
                    format!("{c}*{body}")
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// Inverse of [`SuperExpr::canonical_string`].
    pub fn parse(alg: &Arc<Algebra>, s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero(alg));
        }
        let mut raw = Vec::new();
        for term in s.split(" + ") {
            raw.push(parse_term(alg, term.trim())?);
        }
        Self::normalize(alg, raw)
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms()
            .into_iter()
            .map(|t| TermJson {
                coeff: t.coeff.to_string(),
                exp2: t.mono.exp2,
                thetas: t.thetas,
            })
            .collect()
    }
}

fn parse_term(alg: &Arc<Algebra>, term: &str) -> Result<(BigInt, HalfMonomial, Vec<usize>)> {
    let bad = || Error::Parse(term.to_string());
    let (negative, body) = match term.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, term),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let mut coeff = BigInt::one();
    let mut mono = HalfMonomial::one(alg.nvars);
    let mut thetas = Vec::new();
    for (i, piece) in body.split('*').enumerate() {
        if let Some(rest) = piece.strip_prefix('x') {
            let (idx, exp2) = match rest.split_once("^(") {
                None => (rest, 2),
                Some((idx, e)) => {
                    let e = e.strip_suffix(')').ok_or_else(bad)?;
                    let exp2 = match e.split_once('/') {
                        None => e.parse::<i32>().map_err(|_| bad())? * 2,
                        Some((p, "2")) => p.parse::<i32>().map_err(|_| bad())?,
                        Some(_) => return Err(bad()),
                    };
                    (idx, exp2)
                }
            };
            let idx: usize = idx.parse().map_err(|_| bad())?;
            if idx == 0 || idx > alg.nvars {
                return Err(bad());
            }
            mono.exp2[idx - 1] += exp2;
        } else if piece.starts_with('θ') {
            for id in piece.split('θ').skip(1) {
                thetas.push(id.parse::<usize>().map_err(|_| bad())?);
            }
        } else if i == 0 {
            coeff = piece.parse::<BigInt>().map_err(|_| bad())?;
        } else {
            return Err(bad());
        }
    }
    if negative {
        coeff = -coeff;
    }
    Ok((coeff, mono, thetas))
}

/// Machine-readable form of one term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exp2: Vec<i32>,
    pub thetas: Vec<usize>,
}

impl fmt::Display for SuperExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl fmt::Debug for SuperExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperExpr({})", self.canonical_string())
    }
}
