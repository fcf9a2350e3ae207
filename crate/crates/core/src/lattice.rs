//! Discriminant forms of even lattices, glue subgroups between the forms
//! attached to `S = A₂(−2)` and `T`, and the orbit count that gives the number
//! of Fourier–Mukai partners.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};

/// An element, as residues modulo the cyclic factor orders.
pub type Elem = Vec<u64>;

/// Value modulo `m` (1 or 2) in `[0, m)`.
fn reduce(x: Rational64, m: i64) -> Rational64 {
    let m = Rational64::from_integer(m);
    let k = (x / m).floor();
    x - k * m
}

/// A finite abelian group `⊕ ℤ/n_i` with a quadratic form to `ℚ/2ℤ`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteQuadraticModule {
    pub orders: Vec<u64>,
    /// `q(g_i)` in `[0, 2)`.
    q_gen: Vec<Rational64>,
    /// `b(g_i, g_j)` in `[0, 1)`.
    b_gen: Vec<Vec<Rational64>>,
    /// Generators as vectors of the dual lattice, in lattice coordinates,
    /// when the module comes from a Gram matrix.
    lifts: Option<(Vec<Vec<i64>>, Vec<Vec<Rational64>>)>,
}

impl FiniteQuadraticModule {
    /// Build from generator values. `q` is reduced mod 2, `b` mod 1.
    pub fn new(orders: Vec<u64>, q_gen: Vec<Rational64>, b_gen: Vec<Vec<Rational64>>) -> Result<Self> {
        let n = orders.len();
        if q_gen.len() != n || b_gen.len() != n || b_gen.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("generator data has inconsistent sizes".into()));
        }
        let m = FiniteQuadraticModule {
            orders,
            q_gen: q_gen.into_iter().map(|x| reduce(x, 2)).collect(),
            b_gen: b_gen.into_iter().map(|r| r.into_iter().map(|x| reduce(x, 1)).collect()).collect(),
            lifts: None,
        };
        for i in 0..n {
            let d = m.orders[i] as i64;
            if !reduce(m.q_gen[i] * Rational64::from_integer(d * d), 2).is_zero() {
                return Err(Error::InvalidInput(format!("q is not well defined on a generator of order {d}")));
            }
            if reduce(m.q_gen[i] - m.b_gen[i][i], 1) != Rational64::zero() {
                return Err(Error::InvalidInput("q and b disagree on a generator".into()));
            }
        }
        Ok(m)
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.orders.len()]
    }

    pub fn generator(&self, i: usize) -> Elem {
        let mut e = self.zero();
        e[i] = 1 % self.orders[i];
        e
    }

    /// All elements in mixed-radix order.
    pub fn elements(&self) -> Vec<Elem> {
        let mut out = vec![self.zero()];
        for (i, &n) in self.orders.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * n as usize);
            for e in &out {
                for k in 0..n {
                    let mut f = e.clone();
                    f[i] = k;
                    next.push(f);
                }
            }
            out = next;
        }
        out
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Elem {
        x.iter().zip(y).zip(&self.orders).map(|((a, b), n)| (a + b) % n).collect()
    }

    pub fn neg(&self, x: &[u64]) -> Elem {
        x.iter().zip(&self.orders).map(|(a, n)| (n - a) % n).collect()
    }

    pub fn scale(&self, k: i64, x: &[u64]) -> Elem {
        x.iter()
            .zip(&self.orders)
            .map(|(a, &n)| ((k.rem_euclid(n as i64) as u64) * a) % n)
            .collect()
    }

    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter().zip(&self.orders).fold(1, |acc, (&a, &n)| acc.lcm(&(n / a.gcd(&n))))
    }

    /// `q(x)` in `[0, 2)`.
    pub fn q(&self, x: &[u64]) -> Rational64 {
        let mut acc = Rational64::zero();
        for i in 0..x.len() {
            let xi = Rational64::from_integer(x[i] as i64);
            acc += xi * xi * self.q_gen[i];
            for j in i + 1..x.len() {
                acc += Rational64::from_integer(2 * x[i] as i64 * x[j] as i64) * self.b_gen[i][j];
            }
        }
        reduce(acc, 2)
    }

    /// `b(x, y)` in `[0, 1)`.
    pub fn b(&self, x: &[u64], y: &[u64]) -> Rational64 {
        let mut acc = Rational64::zero();
        for i in 0..x.len() {
            for j in 0..y.len() {
                acc += Rational64::from_integer(x[i] as i64 * y[j] as i64) * self.b_gen[i][j];
            }
        }
        reduce(acc, 1)
    }

    /// `(D, q) ⊕ (D', q')`.
    pub fn direct_sum(&self, o: &Self) -> Self {
        let n = self.rank();
        let m = o.rank();
        let mut b = vec![vec![Rational64::zero(); n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                b[i][j] = self.b_gen[i][j];
            }
        }
        for i in 0..m {
            for j in 0..m {
                b[n + i][n + j] = o.b_gen[i][j];
            }
        }
        let mut orders = self.orders.clone();
        orders.extend(&o.orders);
        let mut q = self.q_gen.clone();
        q.extend(&o.q_gen);
        FiniteQuadraticModule { orders, q_gen: q, b_gen: b, lifts: None }
    }

    /// The same group with `q` replaced by `−q`.
    pub fn twist(&self) -> Self {
        FiniteQuadraticModule {
            orders: self.orders.clone(),
            q_gen: self.q_gen.iter().map(|x| reduce(-*x, 2)).collect(),
            b_gen: self.b_gen.iter().map(|r| r.iter().map(|x| reduce(-*x, 1)).collect()).collect(),
            lifts: self.lifts.as_ref().map(|(g, v)| (g.iter().map(|r| r.iter().map(|x| -x).collect()).collect(), v.clone())),
        }
    }

    /// Action on the module of an integral isometry `m` of the underlying
    /// lattice (matrix acting on lattice coordinates), as images of the generators.
    pub fn induced_automorphism(&self, m: &[Vec<i64>]) -> Result<Vec<Elem>> {
        let (gram, lifts) = self
            .lifts
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("module has no lattice lift".into()))?;
        let n = gram.len();
        let elems = self.elements();
        let lift_of = |e: &Elem| -> Vec<Rational64> {
            (0..n)
                .map(|k| e.iter().zip(lifts).fold(Rational64::zero(), |acc, (&c, g)| acc + g[k] * Rational64::from_integer(c as i64)))
                .collect()
        };
        let all_lifts: Vec<Vec<Rational64>> = elems.iter().map(lift_of).collect();
        let mut out = Vec::new();
        for g in lifts {
            let img: Vec<Rational64> = (0..n)
                .map(|r| (0..n).fold(Rational64::zero(), |acc, c| acc + Rational64::from_integer(m[r][c]) * g[c]))
                .collect();
            let hit = elems.iter().zip(&all_lifts).find(|(_, l)| l.iter().zip(&img).all(|(a, b)| (*a - *b).is_integer()));
            match hit {
                Some((e, _)) => out.push(e.clone()),
                None => return Err(Error::InvalidInput("matrix does not preserve the lattice".into())),
            }
        }
        Ok(out)
    }
}

/// Smith normal form `U·G·V = D` for a small integer matrix.
fn smith(g: &[Vec<i64>]) -> (Vec<Vec<i64>>, Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let n = g.len();
    let id = |n: usize| -> Vec<Vec<i64>> { (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect() };
    let mut d = g.to_vec();
    let mut u = id(n);
    let mut v = id(n);
    for t in 0..n {
        loop {
            // pivot: smallest nonzero absolute value in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if d[i][j] != 0 && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { return (u, d, v) };
            d.swap(t, pi);
            u.swap(t, pi);
            for row in d.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let p = d[t][t];
            let mut clean = true;
            for i in t + 1..n {
                let k = d[i][t].div_euclid(p);
                for c in 0..n {
                    d[i][c] -= k * d[t][c];
                    u[i][c] -= k * u[t][c];
                }
                clean &= d[i][t] == 0;
            }
            for j in t + 1..n {
                let k = d[t][j].div_euclid(p);
                for r in 0..n {
                    d[r][j] -= k * d[r][t];
                    v[r][j] -= k * v[r][t];
                }
                clean &= d[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // divisibility of the trailing block
            let bad = (t + 1..n).flat_map(|i| (t + 1..n).map(move |j| (i, j))).find(|&(i, j)| d[i][j] % p != 0);
            match bad {
                Some((i, _)) => {
                    for c in 0..n {
                        d[t][c] += d[i][c];
                        u[t][c] += u[i][c];
                    }
                }
                None => break,
            }
        }
    }
    (u, d, v)
}

fn prime_powers(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut q = 1;
            while n.is_multiple_of(p) {
                n /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

/// Discriminant form `L*/L` of an even lattice with the given Gram matrix,
/// split into cyclic factors of prime-power order (sorted by prime).
pub fn discriminant_form(gram: &[Vec<i64>]) -> Result<FiniteQuadraticModule> {
    let n = gram.len();
    if gram.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("Gram matrix must be square".into()));
    }
    for i in 0..n {
        if gram[i][i] % 2 != 0 {
            return Err(Error::InvalidInput("Gram matrix must have even diagonal".into()));
        }
        for j in 0..n {
            if gram[i][j] != gram[j][i] {
                return Err(Error::InvalidInput("Gram matrix must be symmetric".into()));
            }
        }
    }
    let (_, d, v) = smith(gram);
    if (0..n).any(|i| d[i][i] == 0) {
        return Err(Error::InvalidInput("degenerate Gram matrix".into()));
    }
    // generator V e_i / d_i, then split each cyclic factor into prime parts
    let mut factors: Vec<(u64, u64, Vec<Rational64>)> = Vec::new();
    for i in 0..n {
        let di = d[i][i].unsigned_abs();
        if di == 1 {
            continue;
        }
        let base: Vec<Rational64> = (0..n).map(|r| Rational64::new(v[r][i], di as i64)).collect();
        for (p, pk) in prime_powers(di) {
            let k = Rational64::from_integer((di / pk) as i64);
            factors.push((p, pk, base.iter().map(|x| *x * k).collect()));
        }
    }
    factors.sort_by_key(|(p, pk, _)| (*p, *pk));
    let pair = |x: &[Rational64], y: &[Rational64]| {
        let mut acc = Rational64::zero();
        for r in 0..n {
            for c in 0..n {
                acc += x[r] * Rational64::from_integer(gram[r][c]) * y[c];
            }
        }
        acc
    };
    let orders: Vec<u64> = factors.iter().map(|f| f.1).collect();
    let q: Vec<Rational64> = factors.iter().map(|f| pair(&f.2, &f.2)).collect();
    let b: Vec<Vec<Rational64>> = factors.iter().map(|f| factors.iter().map(|g| pair(&f.2, &g.2)).collect()).collect();
    let mut m = FiniteQuadraticModule::new(orders, q, b)?;
    m.lifts = Some((gram.to_vec(), factors.into_iter().map(|f| f.2).collect()));
    Ok(m)
}

/// Determinant of a small integer matrix (Bareiss).
pub fn int_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(s) = (k + 1..n).find(|&i| a[i][k] != 0) else { return 0 };
            a.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

/// Gram matrix of `A₂(k)`.
pub fn a2_gram(k: i64) -> Vec<Vec<i64>> {
    vec![vec![2 * k, -k], vec![-k, 2 * k]]
}

/// Intersection matrix of `(h², T₁, T₂)`.
pub fn algebraic_lattice_gram() -> Vec<Vec<i64>> {
    vec![vec![3, 3, 3], vec![3, 7, 1], vec![3, 1, 7]]
}

/// `D(T(X)) = −q_{A₂(2)} ⊕ ⟨α⟩` with `b(α, α) = −1/3`. On an element of
/// order 3 this forces `q(α) = 2/3 mod 2ℤ`.
pub fn transcendental_form() -> Result<FiniteQuadraticModule> {
    let alpha = FiniteQuadraticModule::new(vec![3], vec![Rational64::new(2, 3)], vec![vec![Rational64::new(-1, 3)]])?;
    Ok(discriminant_form(&a2_gram(2))?.twist().direct_sum(&alpha))
}

/// `(D(S), D(T))` for `S = A₂(−2)` and `T = T(X)(−1)`.
pub fn build_ds_dt() -> Result<(FiniteQuadraticModule, FiniteQuadraticModule)> {
    Ok((discriminant_form(&a2_gram(-2))?, transcendental_form()?.twist()))
}

/// A subgroup of `D(S) ⊕ D(T)`, stored as its sorted element set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GlueGroup {
    pub elements: BTreeSet<Elem>,
}

impl GlueGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Homomorphisms `D → D'` given by generator images.
fn apply_hom(dst: &FiniteQuadraticModule, images: &[Elem], x: &[u64]) -> Elem {
    x.iter().zip(images).fold(dst.zero(), |acc, (&c, img)| dst.add(&acc, &dst.scale(c as i64, img)))
}

/// All bijective maps `D → D'` with `q'(φx) = sign·q(x)`, restricted to a
/// target subgroup when given.
pub fn form_maps(
    src: &FiniteQuadraticModule,
    dst: &FiniteQuadraticModule,
    target: Option<&BTreeSet<Elem>>,
    sign: i64,
) -> Vec<Vec<Elem>> {
    let pool: Vec<Elem> = match target {
        Some(t) => t.iter().cloned().collect(),
        None => dst.elements(),
    };
    let src_elems = src.elements();
    let mut out = Vec::new();
    let mut images: Vec<Elem> = Vec::new();
    fn rec(
        k: usize,
        src: &FiniteQuadraticModule,
        dst: &FiniteQuadraticModule,
        pool: &[Elem],
        src_elems: &[Elem],
        images: &mut Vec<Elem>,
        sign: i64,
        out: &mut Vec<Vec<Elem>>,
    ) {
        if k == src.rank() {
            let mut seen = HashSet::new();
            for x in src_elems {
                let y = apply_hom(dst, images, x);
                if reduce(dst.q(&y) - Rational64::from_integer(sign) * src.q(x), 2) != Rational64::zero() || !seen.insert(y) {
                    return;
                }
            }
            out.push(images.clone());
            return;
        }
        for y in pool {
            // image order must divide the generator order
            if !src.orders[k].is_multiple_of(dst.element_order(y)) {
                continue;
            }
            images.push(y.clone());
            rec(k + 1, src, dst, pool, src_elems, images, sign, out);
            images.pop();
        }
    }
    rec(0, src, dst, &pool, &src_elems, &mut images, sign, &mut out);
    out
}

/// `O(D)`: the isometries of a module, as generator images.
pub fn isometries(m: &FiniteQuadraticModule) -> Vec<Vec<Elem>> {
    form_maps(m, m, None, 1)
}

/// All subgroups of order dividing `bound`. Elements are indexed in
/// mixed-radix order and subgroups stored as bitsets; each step joins a known
/// subgroup `H` with one element `x` as `⋃_k (H + kx)`, with deduplication.
pub fn small_subgroups(m: &FiniteQuadraticModule, bound: usize) -> Vec<BTreeSet<Elem>> {
    let elems = m.elements();
    let n = elems.len();
    let index = |e: &[u64]| e.iter().zip(&m.orders).fold(0usize, |acc, (&c, &o)| acc * o as usize + c as usize);
    let add: Vec<Vec<u32>> = elems.iter().map(|x| elems.iter().map(|y| index(&m.add(x, y)) as u32).collect()).collect();
    let words = n.div_ceil(64);
    let members = |set: &[u64]| -> Vec<usize> { (0..n).filter(|&k| set[k / 64] >> (k % 64) & 1 == 1).collect() };
    let mut start = vec![0u64; words];
    start[0] = 1; // index 0 is the identity
    let mut seen: HashSet<Vec<u64>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from(vec![start]);
    while let Some(h) = queue.pop_front() {
        let hm = members(&h);
        for x in 0..n {
            if h[x / 64] >> (x % 64) & 1 == 1 {
                continue;
            }
            let mut g = vec![0u64; words];
            let mut kx = 0usize;
            loop {
                for &y in &hm {
                    let z = add[y][kx] as usize;
                    g[z / 64] |= 1 << (z % 64);
                }
                kx = add[kx][x] as usize;
                if kx == 0 {
                    break;
                }
            }
            let size: usize = g.iter().map(|w| w.count_ones() as usize).sum();
            if bound.is_multiple_of(size) && seen.insert(g.clone()) {
                queue.push_back(g);
            }
        }
    }
    let mut out: Vec<BTreeSet<Elem>> =
        seen.into_iter().map(|g| members(&g).into_iter().map(|k| elems[k].clone()).collect()).collect();
    out.sort();
    out
}

/// Split an element of `D(S) ⊕ D(T)` into its two parts.
fn split(ds: &FiniteQuadraticModule, x: &[u64]) -> (Elem, Elem) {
    (x[..ds.rank()].to_vec(), x[ds.rank()..].to_vec())
}

/// The conditions on a glue group: order `|D(S)|`, isotropic for `q_S ⊕ q_T`,
/// bijective onto `D(S)` and injective into `D(T)`.
pub fn is_glue_group(ds: &FiniteQuadraticModule, dt: &FiniteQuadraticModule, h: &BTreeSet<Elem>) -> bool {
    let total = ds.direct_sum(dt);
    if h.len() as u64 != ds.order() {
        return false;
    }
    if h.iter().any(|x| !total.q(x).is_zero()) {
        return false;
    }
    let s_parts: BTreeSet<Elem> = h.iter().map(|x| split(ds, x).0).collect();
    let t_parts: BTreeSet<Elem> = h.iter().map(|x| split(ds, x).1).collect();
    s_parts.len() == h.len() && t_parts.len() == h.len()
}

fn graph(ds: &FiniteQuadraticModule, dt: &FiniteQuadraticModule, images: &[Elem]) -> GlueGroup {
    let elements = ds
        .elements()
        .into_iter()
        .map(|x| {
            let mut v = x.clone();
            v.extend(apply_hom(dt, images, &x));
            v
        })
        .collect();
    GlueGroup { elements }
}

/// Result of the structured enumeration.
#[derive(Clone, Debug)]
pub struct GlueEnumeration {
    /// Subgroups of `D(T)` anti-isometric to `D(S)`.
    pub targets: Vec<BTreeSet<Elem>>,
    /// Number of anti-isometries onto each target.
    pub maps_per_target: Vec<usize>,
    pub groups: Vec<GlueGroup>,
}

/// Choose `H′ ≤ D(T)` anti-isometric to `D(S)`, then an anti-isometry onto it;
/// the glue group is its graph.
pub fn enumerate_glue_groups(ds: &FiniteQuadraticModule, dt: &FiniteQuadraticModule) -> GlueEnumeration {
    let n = ds.order() as usize;
    let mut targets = Vec::new();
    let mut maps_per_target = Vec::new();
    let mut groups = BTreeSet::new();
    for h in small_subgroups(dt, n) {
        if h.len() != n {
            continue;
        }
        let maps = form_maps(ds, dt, Some(&h), -1);
        if maps.is_empty() {
            continue;
        }
        maps_per_target.push(maps.len());
        targets.push(h);
        for m in maps {
            groups.insert(graph(ds, dt, &m));
        }
    }
    GlueEnumeration { targets, maps_per_target, groups: groups.into_iter().collect() }
}

/// Every subgroup of `D(S) ⊕ D(T)` of order `|D(S)|` satisfying the glue conditions.
pub fn brute_force_glue_groups(ds: &FiniteQuadraticModule, dt: &FiniteQuadraticModule) -> Vec<GlueGroup> {
    let total = ds.direct_sum(dt);
    let n = ds.order() as usize;
    small_subgroups(&total, n)
        .into_iter()
        .filter(|h| h.len() == n && is_glue_group(ds, dt, h))
        .map(|elements| GlueGroup { elements })
        .collect()
}

/// The groups `H_{α,β}` and `H′_{α,β}` for `D(S) = (ℤ/2)²×ℤ/3` and
/// `D(T) = (ℤ/2)²×ℤ/3×ℤ/3`: `α ∈ GL₂(ℤ/2)`, `β ∈ {±1}`.
pub fn parametrized_glue_groups() -> Vec<GlueGroup> {
    let mut out = BTreeSet::new();
    let gl2: Vec<[[u64; 2]; 2]> = (0..16u64)
        .map(|k| [[k & 1, (k >> 1) & 1], [(k >> 2) & 1, (k >> 3) & 1]])
        .filter(|m| (m[0][0] * m[1][1] + m[0][1] * m[1][0]) % 2 == 1)
        .collect();
    for alpha in &gl2 {
        for beta in [1u64, 2] {
            for primed in [false, true] {
                let mut elements = BTreeSet::new();
                for a0 in 0..2 {
                    for a1 in 0..2 {
                        for b in 0..3 {
                            let x0 = (alpha[0][0] * a0 + alpha[0][1] * a1) % 2;
                            let x1 = (alpha[1][0] * a0 + alpha[1][1] * a1) % 2;
                            let bb = (beta * b) % 3;
                            let (t1, t2) = if primed { (0, bb) } else { (bb, 0) };
                            elements.insert(vec![a0, a1, b, x0, x1, t1, t2]);
                        }
                    }
                }
                out.insert(GlueGroup { elements });
            }
        }
    }
    out.into_iter().collect()
}

/// An element of `G = O(S) × {±1}`: an integral isometry of `S` and a sign on `T`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    pub s_matrix: Vec<Vec<i64>>,
    pub t_sign: i64,
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

/// `O(A₂(k)) = W(A₂) × {±1}`, generated by the two simple reflections and `−1`.
pub fn a2_isometries(k: i64) -> Vec<Vec<Vec<i64>>> {
    let gram = a2_gram(k);
    // reflection in root r: x ↦ x − 2(x·r)/(r·r) r, in lattice coordinates
    let refl = |r: usize| -> Vec<Vec<i64>> {
        let rr = gram[r][r];
        (0..2)
            .map(|i| (0..2).map(|j| i64::from(i == j) - if i == r { 2 * gram[r][j] / rr } else { 0 }).collect())
            .collect()
    };
    let gens = vec![refl(0), refl(1), vec![vec![-1, 0], vec![0, -1]]];
    let id = vec![vec![1, 0], vec![0, 1]];
    let mut group = vec![id.clone()];
    let mut queue = VecDeque::from(vec![id]);
    while let Some(g) = queue.pop_front() {
        for h in &gens {
            let p = mat_mul(h, &g);
            if !group.contains(&p) {
                group.push(p.clone());
                queue.push_back(p);
            }
        }
    }
    group
}

/// Orbits of `G` on the glue groups.
#[derive(Clone, Debug)]
pub struct OrbitDecomposition {
    pub group_order: usize,
    pub orbits: Vec<Vec<GlueGroup>>,
    /// Stabilizer of the first member of each orbit.
    pub stabilizers: Vec<Vec<GroupElement>>,
}

impl OrbitDecomposition {
    /// `|M_{S,T}| · |fibre| / |G|`, the number of partners.
    pub fn partner_count(&self) -> usize {
        let total: usize = self.orbits.iter().map(|o| o.len()).sum();
        let fibre = self.stabilizers.first().map_or(0, |s| s.len());
        total * fibre / self.group_order
    }
}

pub fn group_action_orbits(
    ds: &FiniteQuadraticModule,
    dt: &FiniteQuadraticModule,
    groups: &[GlueGroup],
) -> Result<OrbitDecomposition> {
    let elements: Vec<GroupElement> = a2_isometries(-2)
        .into_iter()
        .flat_map(|m| [1, -1].into_iter().map(move |t| GroupElement { s_matrix: m.clone(), t_sign: t }))
        .collect();
    let mut actions = Vec::new();
    for g in &elements {
        actions.push(ds.induced_automorphism(&g.s_matrix)?);
    }
    let act = |gi: usize, h: &GlueGroup| -> GlueGroup {
        let elems = h
            .elements
            .iter()
            .map(|x| {
                let (s, t) = split(ds, x);
                let mut v = apply_hom(ds, &actions[gi], &s);
                v.extend(dt.scale(elements[gi].t_sign, &t));
                v
            })
            .collect();
        GlueGroup { elements: elems }
    };
    let mut remaining: BTreeSet<GlueGroup> = groups.iter().cloned().collect();
    let mut orbits = Vec::new();
    let mut stabilizers = Vec::new();
    while let Some(first) = remaining.iter().next().cloned() {
        let mut orbit = BTreeSet::new();
        let mut stab = Vec::new();
        for gi in 0..elements.len() {
            let img = act(gi, &first);
            if !groups.contains(&img) {
                return Err(Error::Inconsistent("the action does not preserve the glue groups".into()));
            }
            if img == first {
                stab.push(elements[gi].clone());
            }
            orbit.insert(img);
        }
        for h in &orbit {
            remaining.remove(h);
        }
        orbits.push(orbit.into_iter().collect());
        stabilizers.push(stab);
    }
    Ok(OrbitDecomposition { group_order: elements.len(), orbits, stabilizers })
}
