//! Brute-force check of graded traces by counting rational points of
//! Springer fibers.
//!
//! A [`StandardModel`] realizes a nilpotent `N` of Jordan type `λ` on
//! coordinate vectors with an adapted basis, so the coordinate Frobenius
//! fixes `N` and every basis vector of `ker N`: the orbit is untwisted. The
//! number of complete isotropic flags stable under `N` and fixed by `z̃∘F`
//! then equals `Q_q(λ, z)` at the identity.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;

use crate::{
    compgroup::ComponentElement,
    error::{Error, Result},
    field::{prime_power, Elem, FiniteField},
    partition::{Partition, Series},
    recursion::Evaluator,
};

/// Square integer matrix, row-major, acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.data[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: i64) {
        self.data[row * self.n + col] = value;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let mut out = Self::zeros(self.n);
        for r in 0..self.n {
            for k in 0..self.n {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..self.n {
                    out.data[r * self.n + c] += a * rhs.get(k, c);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        IntMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        IntMatrix {
            n: self.n,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&a| a == 0)
    }

    /// Rank over the rationals, computed modulo a large prime. Exact for the
    /// small-entry matrices used here.
    pub fn rank(&self) -> usize {
        const P: i128 = 1_000_000_007;
        let n = self.n;
        let mut m: Vec<Vec<i128>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| i128::from(self.get(r, c)).rem_euclid(P))
                    .collect()
            })
            .collect();
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot) = (rank..n).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(rank, pivot);
            let inv = mod_pow(m[rank][col], P - 2, P);
            for r in 0..n {
                if r != rank && m[r][col] != 0 {
                    let factor = m[r][col] * inv % P;
                    let pivot_row = m[rank].clone();
                    for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                        *x = (*x - factor * p).rem_euclid(P);
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

fn mod_pow(mut base: i128, mut e: i128, p: i128) -> i128 {
    let mut acc = 1;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Position of the basis vector `v^i_{s,t}` (1-based `s`, `t`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisLabel {
    pub part: u32,
    pub string: usize,
    pub level: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardModel {
    pub series: Series,
    pub partition: Partition,
    pub dim: usize,
    pub labels: Vec<BasisLabel>,
    /// `gram[a][b] = ⟨e_a, e_b⟩`.
    pub gram: IntMatrix,
    pub nilpotent: IntMatrix,
    /// `z̃_i` for every part size `i` carrying a component-group generator.
    pub twists: BTreeMap<u32, IntMatrix>,
}

/// Builds the standard model of `λ` with entries `0, ±1`, valid over the
/// prime field of any odd `q`.
pub fn build_standard_model(
    partition: &Partition,
    series: Series,
    q: u64,
) -> Result<StandardModel> {
    partition.ensure_valid(series)?;
    match prime_power(q) {
        Some((p, _)) if p != 2 => {}
        _ => return Err(Error::Oracle(format!("q = {q} is not an odd prime power"))),
    }

    let mut labels = Vec::with_capacity(partition.size());
    for (i, m) in partition.distinct() {
        for s in 1..=m {
            for t in 1..=i as usize {
                labels.push(BasisLabel {
                    part: i,
                    string: s,
                    level: t,
                });
            }
        }
    }
    let dim = labels.len();
    let index = |i: u32, s: usize, t: usize| {
        labels
            .iter()
            .position(|l| l.part == i && l.string == s && l.level == t)
            .expect("basis label exists")
    };

    let mut gram = IntMatrix::zeros(dim);
    let mut nilpotent = IntMatrix::zeros(dim);
    let mut twists = BTreeMap::new();
    for (i, m) in partition.distinct() {
        let len = i as usize;
        // Sp with odd i, or SO with even i: the form pairs the two halves
        // of the strings with opposite signs.
        let split_sign = !series.twists_part(i);
        for s in 1..=m {
            for t in 1..=len {
                let a = index(i, s, t);
                if t < len {
                    nilpotent.set(index(i, s, t + 1), a, 1);
                }
                let b = index(i, m + 1 - s, len + 1 - t);
                let base = if t % 2 == 1 { 1 } else { -1 }; // (-1)^{t+1}
                let value = if split_sign && 2 * s > m { -base } else { base };
                gram.set(a, b, value);
            }
        }
        if series.twists_part(i) {
            let mut z = IntMatrix::identity(dim);
            if m % 2 == 1 {
                let mid = m.div_ceil(2);
                for t in 1..=len {
                    let a = index(i, mid, t);
                    z.set(a, a, -1);
                }
            } else {
                let (lo, hi) = (m / 2, m / 2 + 1);
                for t in 1..=len {
                    let (a, b) = (index(i, lo, t), index(i, hi, t));
                    z.set(a, a, 0);
                    z.set(b, b, 0);
                    z.set(a, b, 1);
                    z.set(b, a, 1);
                }
            }
            twists.insert(i, z);
        }
    }

    Ok(StandardModel {
        series,
        partition: partition.clone(),
        dim,
        labels,
        gram,
        nilpotent,
        twists,
    })
}

impl StandardModel {
    pub fn rank(&self) -> usize {
        self.series
            .rank_of(self.dim)
            .expect("valid partition has the right parity")
    }

    /// Number of subspaces in a complete isotropic flag parametrizing a
    /// Borel subgroup. For `D` the flag stops one short of a maximal isotropic
    /// subspace, which is then determined by the connected component.
    pub fn flag_length(&self) -> usize {
        match self.series {
            Series::B | Series::C => self.rank(),
            Series::D => self.rank().saturating_sub(1),
        }
    }

    /// Jordan type of the nilpotent, from the ranks of its powers.
    pub fn jordan_type(&self) -> Partition {
        let mut ranks = vec![self.dim];
        let mut power = IntMatrix::identity(self.dim);
        while *ranks.last().unwrap() > 0 {
            power = power.mul(&self.nilpotent);
            ranks.push(power.rank());
        }
        // blocks of size >= k: ranks[k-1] - ranks[k]
        let mut parts = Vec::new();
        for k in 1..ranks.len() {
            let at_least_k = ranks[k - 1] - ranks[k];
            let at_least_next = ranks.get(k + 1).map_or(0, |r| ranks[k] - r);
            parts.extend(std::iter::repeat_n(k as u32, at_least_k - at_least_next));
        }
        Partition::new(parts).expect("positive parts")
    }

    /// Checks every structural invariant of the model.
    pub fn check(&self) -> Result<()> {
        let fail = |what: &str| {
            Err(Error::Oracle(format!(
                "model for {}: {what}",
                self.partition
            )))
        };
        let g = &self.gram;
        let gt = g.transpose();
        let expected_t = match self.series {
            Series::C => g.neg(),
            Series::B | Series::D => g.clone(),
        };
        if gt != expected_t {
            return fail("gram has the wrong symmetry");
        }
        if g.rank() != self.dim {
            return fail("gram is degenerate");
        }
        let n = &self.nilpotent;
        if !n.transpose().mul(g).add(&g.mul(n)).is_zero() {
            return fail("nilpotent is not skew for the form");
        }
        if self.jordan_type() != self.partition {
            return fail("nilpotent has the wrong Jordan type");
        }
        let id = IntMatrix::identity(self.dim);
        for (i, z) in &self.twists {
            if &z.transpose().mul(g).mul(z) != g {
                return fail(&format!("z{i} does not preserve the form"));
            }
            if z.mul(n) != n.mul(z) {
                return fail(&format!("z{i} does not commute with the nilpotent"));
            }
            if z.mul(z) != id {
                return fail(&format!("z{i} is not an involution"));
            }
        }
        Ok(())
    }

    /// Product of the twists over the support of `z`.
    pub fn twist_for(&self, z: &ComponentElement) -> Result<IntMatrix> {
        z.support()
            .try_fold(IntMatrix::identity(self.dim), |acc, i| {
                self.twists.get(&i).map(|t| acc.mul(t)).ok_or_else(|| {
                    Error::Oracle(format!(
                        "z{i} is not a generator of the model for {}",
                        self.partition
                    ))
                })
            })
    }

    /// The same model conjugated by an orthogonal reflection. In series `D`
    /// this moves a very even orbit `λ+` to `λ-`.
    pub fn reflected(&self) -> Result<StandardModel> {
        if self.series == Series::C {
            return Err(Error::Oracle("symplectic forms have no reflections".into()));
        }
        // v = e_a + e_b with ⟨e_a, e_b⟩ = ±1 gives ⟨v, v⟩ = ±2 (or ±1 when a
        // diagonal entry is hit), so r(x) = x - 2⟨x, v⟩/⟨v, v⟩ v is integral.
        let (a, b) = (0..self.dim)
            .find_map(|a| {
                (0..self.dim)
                    .find(|&b| b != a && self.gram.get(a, b) != 0)
                    .map(|b| (a, b))
            })
            .or_else(|| (self.dim > 0).then_some((0, 0)))
            .ok_or_else(|| Error::Oracle("empty model".into()))?;
        let mut v = vec![0i64; self.dim];
        v[a] += 1;
        v[b] += 1;
        let norm: i64 = (0..self.dim)
            .flat_map(|r| (0..self.dim).map(move |c| (r, c)))
            .map(|(r, c)| v[r] * self.gram.get(r, c) * v[c])
            .sum();
        if norm == 0 || 2 % norm != 0 {
            return Err(Error::Oracle("no integral reflection found".into()));
        }
        // r = I - (2/norm) v (G v)^T
        let gv: Vec<i64> = (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.gram.get(r, c) * v[c]).sum())
            .collect();
        let scale = 2 / norm;
        let mut r = IntMatrix::identity(self.dim);
        for (row, &vr) in v.iter().enumerate() {
            for (col, &g) in gv.iter().enumerate() {
                r.set(row, col, r.get(row, col) - scale * vr * g);
            }
        }
        let conj = |m: &IntMatrix| r.mul(m).mul(&r);
        Ok(StandardModel {
            series: self.series,
            partition: self.partition.clone(),
            dim: self.dim,
            labels: self.labels.clone(),
            gram: self.gram.clone(),
            nilpotent: conj(&self.nilpotent),
            twists: self.twists.iter().map(|(i, z)| (*i, conj(z))).collect(),
        })
    }
}

/// Reduced row echelon basis of a subspace.
#[derive(Debug, Clone, Default)]
struct Echelon {
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn reduce(&self, field: &FiniteField, v: &mut [Elem]) {
        for (row, &pivot) in self.rows.iter().zip(&self.pivots) {
            let c = v[pivot];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = field.sub(*x, field.mul(c, r));
                }
            }
        }
    }

    /// Adds a reduced, nonzero vector.
    fn insert(&mut self, field: &FiniteField, mut v: Vec<Elem>) {
        let pivot = v.iter().position(|&x| x != 0).expect("nonzero vector");
        let inv = field.inv(v[pivot]);
        for x in v.iter_mut() {
            *x = field.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[pivot];
            if c != 0 {
                for (x, &y) in row.iter_mut().zip(&v) {
                    *x = field.sub(*x, field.mul(c, y));
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(pivot);
    }
}

/// Basis of the null space of `rows` (each of length `width`).
fn null_space(field: &FiniteField, mut rows: Vec<Vec<Elem>>, width: usize) -> Vec<Vec<Elem>> {
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = field.inv(rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let c = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(c, y));
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    (0..width)
        .filter(|c| !pivot_cols.contains(c))
        .map(|free| {
            let mut v = vec![0; width];
            v[free] = 1;
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = field.neg(rows[r][free]);
            }
            v
        })
        .collect()
}

/// Flag enumeration over a fixed field, with an optional twisted Frobenius.
struct FlagCounter<'a> {
    field: &'a FiniteField,
    dim: usize,
    depth: usize,
    check_isotropy: bool,
    gram: Vec<Elem>,
    nilpotent: Vec<Elem>,
    /// `(z̃, q-power table)` when counting fixed points of `z̃∘F`.
    twist: Option<(Vec<Elem>, Vec<Elem>)>,
}

impl FlagCounter<'_> {
    fn form(&self, u: &[Elem], v: &[Elem]) -> Elem {
        let f = self.field;
        let mut acc = 0;
        for (a, &ua) in u.iter().enumerate() {
            if ua == 0 {
                continue;
            }
            for (b, &vb) in v.iter().enumerate() {
                let g = self.gram[a * self.dim + b];
                if g != 0 && vb != 0 {
                    acc = f.add(acc, f.mul(ua, f.mul(g, vb)));
                }
            }
        }
        acc
    }

    fn apply(&self, m: &[Elem], v: &[Elem]) -> Vec<Elem> {
        let f = self.field;
        (0..self.dim)
            .map(|r| {
                (0..self.dim).fold(0, |acc, c| {
                    let a = m[r * self.dim + c];
                    if a == 0 || v[c] == 0 {
                        acc
                    } else {
                        f.add(acc, f.mul(a, v[c]))
                    }
                })
            })
            .collect()
    }

    /// Lines `V_k + ⟨v⟩` extending the flag: `v ⊥ V_k`, `N v ∈ V_k`, `v`
    /// isotropic, and `z̃F` stabilizing the extension.
    fn extensions(&self, flag: &Echelon) -> Vec<Vec<Elem>> {
        let f = self.field;
        let free: Vec<usize> = (0..self.dim).filter(|c| !flag.pivots.contains(c)).collect();
        let mut constraints: Vec<Vec<Elem>> = Vec::new();
        for row in &flag.rows {
            constraints.push(
                free.iter()
                    .map(|&j| {
                        let mut e = vec![0; self.dim];
                        e[j] = 1;
                        self.form(row, &e)
                    })
                    .collect(),
            );
        }
        // reduce(N e_j) for each free j; every coordinate must vanish
        let images: Vec<Vec<Elem>> = free
            .iter()
            .map(|&j| {
                let mut col: Vec<Elem> = (0..self.dim)
                    .map(|r| self.nilpotent[r * self.dim + j])
                    .collect();
                flag.reduce(f, &mut col);
                col
            })
            .collect();
        for c in 0..self.dim {
            let row: Vec<Elem> = images.iter().map(|col| col[c]).collect();
            if row.iter().any(|&x| x != 0) {
                constraints.push(row);
            }
        }
        let basis = null_space(f, constraints, free.len());
        let d = basis.len();
        if d == 0 {
            return Vec::new();
        }

        let mut out = Vec::new();
        let q = f.order();
        // projective points: first nonzero coefficient is 1
        for lead in 0..d {
            let tail = d - lead - 1;
            let total = (q as u64).pow(tail as u32);
            for code in 0..total {
                let mut coeffs = vec![0; d];
                coeffs[lead] = 1;
                let mut rest = code;
                for slot in coeffs[lead + 1..].iter_mut() {
                    *slot = (rest % q as u64) as Elem;
                    rest /= q as u64;
                }
                let mut v = vec![0; self.dim];
                for (c, b) in coeffs.iter().zip(&basis) {
                    if *c == 0 {
                        continue;
                    }
                    for (&j, &x) in free.iter().zip(b) {
                        v[j] = f.add(v[j], f.mul(*c, x));
                    }
                }
                if self.check_isotropy && self.form(&v, &v) != 0 {
                    continue;
                }
                if let Some((twist, frob)) = &self.twist {
                    let moved: Vec<Elem> = v.iter().map(|&x| frob[x as usize]).collect();
                    let mut image = self.apply(twist, &moved);
                    flag.reduce(f, &mut image);
                    let pos = v.iter().position(|&x| x != 0).expect("nonzero");
                    let scale = f.mul(image[pos], f.inv(v[pos]));
                    if image.iter().zip(&v).any(|(&a, &b)| a != f.mul(scale, b)) {
                        continue;
                    }
                }
                out.push(v);
            }
        }
        out
    }

    fn count_from(&self, flag: &Echelon, level: usize) -> u64 {
        if level == self.depth {
            return 1;
        }
        self.extensions(flag)
            .into_iter()
            .map(|v| {
                let mut next = flag.clone();
                next.insert(self.field, v);
                self.count_from(&next, level + 1)
            })
            .sum()
    }

    fn count(&self) -> u64 {
        if self.depth == 0 {
            return 1;
        }
        let root = Echelon::default();
        self.extensions(&root)
            .into_par_iter()
            .map(|v| {
                let mut next = Echelon::default();
                next.insert(self.field, v);
                self.count_from(&next, 1)
            })
            .sum()
    }
}

/// Counts complete isotropic `N`-stable flags fixed by `z̃∘F`.
///
/// For `z = id` the flags are enumerated over `F_q`; otherwise over
/// `F_{q^2}`, which contains every fixed flag because `(z̃F)^2 = F^2`.
pub fn count_fixed_flags(model: &StandardModel, z: &ComponentElement, q: u64) -> Result<u64> {
    let (p, _) =
        prime_power(q).ok_or_else(|| Error::Oracle(format!("{q} is not a prime power")))?;
    if p == 2 {
        return Err(Error::Oracle("characteristic 2 is not supported".into()));
    }
    let twist = model.twist_for(z)?;
    let field_order = if z.is_identity() { q } else { q * q };
    let field = FiniteField::new(field_order)?;
    let embed = |m: &IntMatrix| -> Vec<Elem> {
        (0..model.dim)
            .flat_map(|r| (0..model.dim).map(move |c| (r, c)))
            .map(|(r, c)| field.from_int(m.get(r, c)))
            .collect()
    };
    let twist = (!z.is_identity()).then(|| {
        let frob: Vec<Elem> = field.elements().map(|x| field.pow(x, q)).collect();
        (embed(&twist), frob)
    });
    let counter = FlagCounter {
        field: &field,
        dim: model.dim,
        depth: model.flag_length(),
        check_isotropy: model.series != Series::C,
        gram: embed(&model.gram),
        nilpotent: embed(&model.nilpotent),
        twist,
    };
    Ok(counter.count())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagCountReport {
    pub series: Series,
    pub partition: Partition,
    pub z: ComponentElement,
    pub q: u64,
    pub count: u64,
    pub predicted: BigInt,
    pub matched: bool,
    /// Count for the reflected model, recorded for very even partitions in
    /// series `D` (the other orbit of the pair).
    pub mirror_count: Option<u64>,
}

impl FlagCountReport {
    /// The mirror orbit disagrees with the chosen one. Reported, not fatal.
    pub fn mirror_discrepancy(&self) -> bool {
        self.mirror_count.is_some_and(|m| m != self.count)
    }
}

pub fn verify(
    partition: &Partition,
    z: &ComponentElement,
    series: Series,
    q: u64,
) -> Result<FlagCountReport> {
    verify_with(&Evaluator::new(), partition, z, series, q)
}

/// Compares the flag count with `Q_q(λ, z)` using a shared evaluator.
pub fn verify_with(
    evaluator: &Evaluator,
    partition: &Partition,
    z: &ComponentElement,
    series: Series,
    q: u64,
) -> Result<FlagCountReport> {
    let poly = evaluator.graded_trace(partition, z, series)?;
    let q_int = i64::try_from(q).map_err(|_| Error::Oracle(format!("q = {q} too large")))?;
    let predicted = poly.eval_integer(q_int);
    if !predicted.is_integer() || predicted.is_negative() {
        return Err(Error::Oracle(format!(
            "prediction {predicted} is not a count"
        )));
    }
    let predicted = predicted.to_integer();

    let model = build_standard_model(partition, series, q)?;
    let count = count_fixed_flags(&model, z, q)?;
    let mirror_count = if partition.validate(series).very_even {
        Some(count_fixed_flags(&model.reflected()?, z, q)?)
    } else {
        None
    };
    Ok(FlagCountReport {
        series,
        partition: partition.clone(),
        z: z.clone(),
        q,
        count,
        matched: BigInt::from(count) == predicted,
        predicted,
        mirror_count,
    })
}
