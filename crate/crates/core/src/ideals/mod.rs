//! Vanishing ideals of finite point sets in exact rational arithmetic.
//!
//! Gröbner data come from a Buchberger–Möller style elimination: monomials are
//! visited in increasing grevlex order, their evaluation vectors on the points
//! are reduced against those of the standard monomials found so far, and a
//! dependent monomial yields a reduced Gröbner basis element.

pub mod polynomial;

use std::collections::{BTreeMap, HashSet};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::{Error, Result};
use crate::geometry::{base_configuration, FacetDescriptor, PointConfig};
use crate::matroid::Matroid;
pub use polynomial::{rat, Monomial, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerData {
    pub vars: usize,
    /// Reduced Gröbner basis, sorted by leading monomial.
    pub basis: Vec<Polynomial>,
    /// Standard monomials in increasing term order.
    pub standard_monomials: Vec<Monomial>,
    /// `hilbert[d] = dim I(V)_{<=d}` for `d` up to `max_degree()`.
    pub hilbert: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct GroebnerJson {
    vars: usize,
    basis: Vec<String>,
    standard_monomials: Vec<Vec<u32>>,
    hilbert: Vec<usize>,
}

/// Number of monomials of degree at most `d` in `vars` variables.
pub fn monomial_count(vars: usize, d: usize) -> usize {
    bits::binomial(vars + d, d)
}

impl GroebnerData {
    pub fn max_basis_degree(&self) -> u32 {
        self.basis.iter().filter_map(Polynomial::degree).max().unwrap_or(0)
    }

    fn max_degree(&self) -> u32 {
        let s = self.standard_monomials.iter().map(Monomial::degree).max().unwrap_or(0);
        s.max(self.max_basis_degree())
    }

    /// `dim I(V)_{<=d}` for any `d`.
    pub fn ideal_dim(&self, d: usize) -> usize {
        let std = self.standard_monomials.iter().filter(|m| m.degree() as usize <= d).count();
        monomial_count(self.vars, d) - std
    }

    /// Membership by division with remainder against the Gröbner basis.
    pub fn contains(&self, f: &Polynomial) -> bool {
        f.reduce(&self.basis).is_zero()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        f.reduce(&self.basis)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GroebnerJson {
            vars: self.vars,
            basis: self.basis.iter().map(|p| p.to_string()).collect(),
            standard_monomials: self.standard_monomials.iter().map(|m| m.0.clone()).collect(),
            hilbert: self.hilbert.clone(),
        })
        .expect("serializable")
    }
}

struct EchelonRow {
    pivot: usize,
    values: Vec<Rational>,
    /// The reduced evaluation vector as a combination of standard monomials.
    combo: Polynomial,
}

fn check_distinct(v: &PointConfig) -> Result<()> {
    let mut seen = HashSet::new();
    for p in &v.points {
        if !seen.insert(p.clone()) {
            return Err(Error::DuplicatePoints);
        }
    }
    Ok(())
}

/// Reduced grevlex Gröbner basis, standard monomials and truncated Hilbert
/// function of the vanishing ideal of `v`.
pub fn vanishing_ideal(v: &PointConfig) -> Result<GroebnerData> {
    check_distinct(v)?;
    let vars = v.dim;
    let columns: Vec<Vec<Rational>> = (0..vars).map(|i| v.points.iter().map(|p| p[i].clone()).collect()).collect();

    let mut rows: Vec<EchelonRow> = Vec::new();
    let mut standard: Vec<(Monomial, Vec<Rational>)> = Vec::new();
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut leading: Vec<Monomial> = Vec::new();

    let one = Monomial::one(vars);
    let mut frontier: Vec<(Monomial, Vec<Rational>)> = vec![(one, vec![Rational::one(); v.len()])];
    while !frontier.is_empty() {
        let mut next: BTreeMap<Monomial, Vec<Rational>> = BTreeMap::new();
        for (t, eval) in frontier {
            let mut values = eval.clone();
            let mut combo = Polynomial::term(t.clone(), Rational::one());
            for row in &rows {
                if values[row.pivot].is_zero() {
                    continue;
                }
                let c = &values[row.pivot] / &row.values[row.pivot];
                for (x, y) in values.iter_mut().zip(&row.values) {
                    if !y.is_zero() {
                        *x -= &c * y;
                    }
                }
                combo = combo.sub(&row.combo.scale(&c));
            }
            match values.iter().position(|x| !x.is_zero()) {
                None => {
                    leading.push(t);
                    basis.push(combo);
                }
                Some(pivot) => {
                    rows.push(EchelonRow { pivot, values, combo });
                    for i in 0..vars {
                        let m = t.times_var(i);
                        if !next.contains_key(&m) {
                            let e: Vec<Rational> = eval.iter().zip(&columns[i]).map(|(a, b)| a * b).collect();
                            next.insert(m, e);
                        }
                    }
                    standard.push((t, eval));
                }
            }
        }
        frontier = next
            .into_iter()
            .filter(|(m, _)| !leading.iter().any(|l| l.divides(m)))
            .collect();
    }

    let mut basis: Vec<Polynomial> = basis.into_iter().map(|p| p.monic()).collect();
    basis.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    let standard_monomials: Vec<Monomial> = standard.into_iter().map(|(m, _)| m).collect();
    let mut data = GroebnerData { vars, basis, standard_monomials, hilbert: Vec::new() };
    data.hilbert = (0..=data.max_degree() as usize).map(|d| data.ideal_dim(d)).collect();
    Ok(data)
}

/// A vector-space basis of `I(V)_{<=k}`: `t - NF(t)` for every non-standard
/// monomial `t` of degree at most `k`.
pub fn truncated_ideal_basis(g: &GroebnerData, k: u32) -> Vec<Polynomial> {
    let mut out = Vec::new();
    for d in 0..=k {
        for t in Monomial::of_degree(g.vars, d) {
            let p = Polynomial::term(t, Rational::one());
            let nf = g.normal_form(&p);
            if nf != p {
                out.push(p.sub(&nf));
            }
        }
    }
    out
}

/// Linearly independent polynomials kept in echelon form by leading monomial.
#[derive(Default)]
struct PolySpan {
    rows: BTreeMap<Monomial, Polynomial>,
}

impl PolySpan {
    /// Adds `p` if it is independent of the rows; returns the new row.
    fn insert(&mut self, mut p: Polynomial) -> Option<Polynomial> {
        while let Some((lm, lc)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
            match self.rows.get(&lm) {
                Some(row) => p = p.sub(&row.scale(&lc)),
                None => {
                    let row = p.monic();
                    self.rows.insert(lm, row.clone());
                    return Some(row);
                }
            }
        }
        None
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// Sufficient test for `<I_{<=k}> = I(V)`: the products `m*g` of degree at
/// most `d` already span `I(V)_{<=d}` for every `d` up to the largest Gröbner
/// basis degree. A failure is inconclusive, since generators can also combine
/// through cancellation in higher degrees.
fn generated_degreewise(g: &GroebnerData, k: u32) -> bool {
    let top = g.max_basis_degree();
    if top <= k {
        return true;
    }
    let mut span = PolySpan::default();
    // rows added in the previous round; older rows were already multiplied
    let mut fresh: Vec<Polynomial> = truncated_ideal_basis(g, k).into_iter().filter_map(|p| span.insert(p)).collect();
    for d in k + 1..=top {
        let mut added = Vec::new();
        for p in &fresh {
            for i in 0..g.vars {
                added.extend(span.insert(p.mul_monomial(&Monomial::var(g.vars, i), &Rational::one())));
            }
        }
        fresh = added;
        if span.dim() != g.ideal_dim(d as usize) {
            return false;
        }
    }
    true
}

/// Reduced Gröbner basis (grevlex) of the ideal generated by `gens`, sorted
/// by leading monomial.
pub fn groebner_basis(gens: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut g: Vec<Polynomial> = gens.into_iter().filter(|p| !p.is_zero()).map(|p| p.monic()).collect();
    let mut pairs: Vec<(usize, usize)> = (0..g.len()).flat_map(|i| (0..i).map(move |j| (j, i))).collect();
    while let Some((i, j)) = pairs.pop() {
        let (li, ci) = g[i].leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let (lj, cj) = g[j].leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        // coprime leading terms reduce to zero
        if li.0.iter().zip(&lj.0).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let l = li.lcm(&lj);
        let sp = g[i]
            .mul_monomial(&li.quotient_of(&l), &(Rational::one() / ci))
            .sub(&g[j].mul_monomial(&lj.quotient_of(&l), &(Rational::one() / cj)));
        let r = sp.reduce(&g);
        if !r.is_zero() {
            let k = g.len();
            g.push(r.monic());
            pairs.extend((0..k).map(|a| (a, k)));
        }
    }
    let mut min: Vec<Polynomial> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let lp = p.leading().unwrap().0;
        let redundant = g.iter().enumerate().any(|(j, q)| {
            let lq = q.leading().unwrap().0;
            j != i && lq.divides(lp) && (lq != lp || j < i)
        });
        if !redundant {
            min.push(p.clone());
        }
    }
    let mut out: Vec<Polynomial> = (0..min.len())
        .map(|i| {
            let others: Vec<Polynomial> = min.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, q)| q.clone()).collect();
            let (lm, _) = min[i].leading().unwrap();
            let head = Polynomial::term(lm.clone(), Rational::one());
            head.add(&min[i].sub(&head).reduce(&others))
        })
        .collect();
    out.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    out
}

/// Whether the degree-`<=k` part of `I(V)` generates `I(V)`. Tries the
/// degree-by-degree span comparison first and settles the remaining cases by
/// a Gröbner basis of `<I_{<=k}>`.
pub fn generation_degree_at_most_data(g: &GroebnerData, k: u32) -> bool {
    if generated_degreewise(g, k) {
        return true;
    }
    let gens = truncated_ideal_basis(g, k);
    if gens.is_empty() {
        return g.basis.is_empty();
    }
    groebner_basis(gens) == g.basis
}

fn is_zero_one(v: &PointConfig) -> bool {
    v.points.iter().flatten().all(|x| x.is_zero() || x.is_one())
}

/// For `V` inside `{0,1}^n` and `k >= 2` the ideal `<I_{<=k}>` contains every
/// `x_i^2 - x_i`, so it is radical and equals `I(W)` for its zero set `W` in
/// the cube. It is `I(V)` exactly when every other cube vertex is a non-zero
/// of some generator.
fn generated_on_cube(v: &PointConfig, g: &GroebnerData, k: u32) -> bool {
    let gens = truncated_ideal_basis(g, k);
    let n = v.dim;
    let members: HashSet<u64> = v
        .points
        .iter()
        .map(|p| p.iter().enumerate().filter(|(_, x)| x.is_one()).fold(0u64, |acc, (i, _)| acc | 1 << i))
        .collect();
    (0u64..1 << n).filter(|w| !members.contains(w)).all(|w| {
        let point: Vec<Rational> = (0..n).map(|i| rat((w >> i & 1) as i64)).collect();
        gens.iter().any(|p| !p.eval(&point).is_zero())
    })
}

/// Cube vertices tested one by one stay practical up to this dimension.
const CUBE_TEST_MAX_DIM: usize = 20;

pub fn generation_degree_at_most(v: &PointConfig, k: u32) -> Result<bool> {
    let g = vanishing_ideal(v)?;
    if generated_degreewise(&g, k) {
        return Ok(true);
    }
    if k >= 2 && v.dim <= CUBE_TEST_MAX_DIM && is_zero_one(v) {
        return Ok(generated_on_cube(v, &g, k));
    }
    Ok(generation_degree_at_most_data(&g, k))
}

/// Smallest `k` passing the generation test.
pub fn generation_degree(v: &PointConfig) -> Result<u32> {
    let g = vanishing_ideal(v)?;
    for k in 0..g.max_basis_degree() {
        if generation_degree_at_most(v, k)? {
            return Ok(k);
        }
    }
    Ok(g.max_basis_degree())
}

/// Smallest degree of a polynomial vanishing on `v` but not at `p`.
pub fn separation_degree(v: &PointConfig, p: &[Rational]) -> Result<u32> {
    if v.contains(p) {
        return Err(Error::PointInV);
    }
    let base = vanishing_ideal(v)?;
    let mut points = v.points.clone();
    points.push(p.to_vec());
    let extended = vanishing_ideal(&PointConfig::new(v.dim, points))?;
    // The standard monomials of V are among those of V + p; exactly one is new.
    let old: HashSet<&Monomial> = base.standard_monomials.iter().collect();
    let extra = extended
        .standard_monomials
        .iter()
        .find(|m| !old.contains(m))
        .expect("one more standard monomial");
    Ok(extra.degree())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationBound {
    pub separation_degree: u32,
    /// Certified `Th(M) >= theta_at_least`.
    pub theta_at_least: u32,
}

/// A `k`-sos certificate for the facet functional gives a polynomial of
/// degree `<= 2k` vanishing on `V_M` and negative at `p`, so every `k` with
/// `2k < sep` is ruled out.
pub fn theta_lower_bound_from_separation(m: &Matroid, facet: &FacetDescriptor, p: &[Rational]) -> Result<SeparationBound> {
    let ell: Rational = rat(facet.rank_s as i64) - bits::elements(facet.subset).map(|e| p[e].clone()).sum::<Rational>();
    if !ell.is_negative() {
        return Err(Error::NonNegativeAtP);
    }
    let sep = separation_degree(&base_configuration(m), p)?;
    Ok(SeparationBound { separation_degree: sep, theta_at_least: (sep - 1) / 2 + 1 })
}

/// Indicator vector of a subset as a rational point.
pub fn indicator(n: usize, s: bits::ElementSet) -> Vec<Rational> {
    (0..n).map(|i| rat((s >> i & 1) as i64)).collect()
}

/// The generators `x_e^2 - x_e`, `sum x_e - r` and `x^C` for circuits `C`.
pub fn matroid_ideal_generators(m: &Matroid) -> Vec<Polynomial> {
    let n = m.ground_size();
    let mut out = Vec::new();
    for e in 0..n {
        let x = Polynomial::var(n, e);
        out.push(x.mul(&x).sub(&x));
    }
    let mut sum = Polynomial::constant(n, -rat(m.rank() as i64));
    for e in 0..n {
        sum = sum.add(&Polynomial::var(n, e));
    }
    out.push(sum);
    for c in m.circuits() {
        let mut e = vec![0; n];
        for i in bits::elements(c) {
            e[i] = 1;
        }
        out.push(Polynomial::term(Monomial(e), Rational::one()));
    }
    out
}
