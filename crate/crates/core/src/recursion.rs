//! Restriction of graded Springer traces to the maximal parabolic subgroup,
//! and the memoized evaluation of `Q_x(λ, z)` at the identity.
//!
//! Restriction preserves the value at the identity, so unrolling one
//! expansion step per rank computes the Poincaré polynomial of the Springer
//! fiber (for `z = id`) or the graded trace of `z` on its cohomology.

use std::{cmp::Ordering, collections::HashMap, sync::RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::{
    compgroup::{enumerate_a, ComponentElement},
    error::{Error, Result},
    partition::{valid_partitions, Partition, Series, Shape},
    polynomial::Poly,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionTerm {
    pub coeff: Poly,
    pub child: Shape,
    /// Canonical against `child` when it is a partition. For null children
    /// this is the raw product, kept so the two null terms stay distinct.
    pub child_z: ComponentElement,
}

impl RestrictionTerm {
    pub fn is_null(&self) -> bool {
        self.child.is_null()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionExpansion {
    pub series: Series,
    pub partition: Partition,
    pub z: ComponentElement,
    pub terms: Vec<RestrictionTerm>,
}

impl RestrictionExpansion {
    /// Sum of all coefficients, null terms included.
    pub fn coefficient_sum(&self) -> Poly {
        self.terms
            .iter()
            .fold(Poly::zero(), |acc, t| &acc + &t.coeff)
    }

    /// Terms whose child is a genuine partition.
    pub fn live_terms(&self) -> impl Iterator<Item = &RestrictionTerm> {
        self.terms.iter().filter(|t| !t.is_null())
    }
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

struct TermBuilder {
    series: Series,
    terms: Vec<RestrictionTerm>,
}

impl TermBuilder {
    fn push(&mut self, coeff: Poly, child: Shape, z: ComponentElement) {
        if coeff.is_zero() {
            return;
        }
        let child_z = match &child {
            Shape::Partition(p) => z.canonical(p, self.series),
            Shape::Null => z,
        };
        match self
            .terms
            .iter_mut()
            .find(|t| t.child == child && t.child_z == child_z)
        {
            Some(t) => t.coeff += &coeff,
            None => self.terms.push(RestrictionTerm {
                coeff,
                child,
                child_z,
            }),
        }
    }

    fn finish(mut self) -> Vec<RestrictionTerm> {
        self.terms.retain(|t| !t.coeff.is_zero());
        self.terms.sort_by(term_order);
        self.terms
    }
}

/// Child partitions in reverse lexicographic order, null last, then by `z`.
fn term_order(a: &RestrictionTerm, b: &RestrictionTerm) -> Ordering {
    let shape = match (&a.child, &b.child) {
        (Shape::Partition(p), Shape::Partition(q)) => q.cmp(p),
        (Shape::Partition(_), Shape::Null) => Ordering::Less,
        (Shape::Null, Shape::Partition(_)) => Ordering::Greater,
        (Shape::Null, Shape::Null) => Ordering::Equal,
    };
    shape.then_with(|| a.child_z.cmp(&b.child_z))
}

/// `z · (z_i z_{i-2})^e`, where `z_{i-2}` is dropped when `i - 2 < 0`.
fn twisted(z: &ComponentElement, i: u32, e: u32) -> ComponentElement {
    let mut out = z.clone();
    if e % 2 == 1 {
        out.toggle(i);
        if i >= 2 {
            out.toggle(i - 2);
        }
    }
    out
}

/// One application of the restriction formula to `Q_x(λ, z)`.
///
/// Parts are processed from largest to smallest. Parts of the non-twisting
/// parity (odd for `C`, even for `B`/`D`) contribute a single term on
/// `λ⟨i,i→i-1,i-1⟩`; parts of the twisting parity also contribute the two
/// terms on `λ⟨i→i-2⟩`, weighted by the `±` halves.
pub fn expand_restriction(
    partition: &Partition,
    z: &ComponentElement,
    series: Series,
) -> Result<RestrictionExpansion> {
    partition.ensure_valid(series)?;
    z.ensure_in_a(partition, series)?;

    let mut builder = TermBuilder {
        series,
        terms: Vec::new(),
    };
    for (i, m) in partition.distinct() {
        let shift = Poly::x_pow(partition.multiplicity_above(i));
        let lowered = i64::from(i) - 1;
        let pair_down = || partition.surgery(&[i, i], &[lowered, lowered]);
        let single_down = || partition.surgery(&[i], &[i64::from(i) - 2]);

        if !series.twists_part(i) {
            // m is even here by validity, so two copies of i exist
            builder.push(&shift * &Poly::geom(m), pair_down()?, z.clone());
            continue;
        }

        let a = z.exponent(i);
        let top = Poly::x_pow(m - 1);
        if m % 2 == 1 {
            let mid = Poly::x_pow((m - 1) / 2);
            if m >= 3 {
                builder.push(&shift * &Poly::geom(m - 1), pair_down()?, z.clone());
            }
            let child = single_down()?;
            let plus = (&top + &mid).scale(&half());
            let minus = (&top - &mid).scale(&half());
            builder.push(&shift * &plus, child.clone(), twisted(z, i, a));
            builder.push(&shift * &minus, child, twisted(z, i, a + 1));
        } else {
            let sign = if a == 0 { Poly::one() } else { -&Poly::one() };
            let mid = &sign * &Poly::x_pow(m / 2 - 1);
            builder.push(
                &shift * &(&Poly::geom(m - 1) + &mid),
                pair_down()?,
                z.clone(),
            );
            let child = single_down()?;
            let side = (&top - &mid).scale(&half());
            builder.push(&shift * &side, child.clone(), twisted(z, i, a));
            builder.push(&shift * &side, child, twisted(z, i, a + 1));
        }
    }

    let terms = builder.finish();
    if series != Series::C {
        for t in terms.iter().filter(|t| !t.is_null()) {
            assert!(
                t.child_z.cardinality() % 2 == 0,
                "expansion of {partition} at {z} produced {} on {} outside A",
                t.child_z,
                t.child
            );
        }
    }
    Ok(RestrictionExpansion {
        series,
        partition: partition.clone(),
        z: z.clone(),
        terms,
    })
}

/// Grounding values: `C` at the empty partition, `B` at `(1)`, `D` at `(1,1)`.
fn base_case(series: Series, partition: &Partition) -> Option<Poly> {
    let grounded = match series {
        Series::C => partition.is_empty(),
        Series::B => partition.parts() == [1],
        Series::D => partition.parts() == [1, 1],
    };
    grounded.then(Poly::one)
}

type MemoKey = (Series, Partition, ComponentElement);

/// One row of a full table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub partition: Partition,
    pub z: ComponentElement,
    pub poly: Poly,
    pub very_even: bool,
}

/// Memoized evaluator for graded traces. Safe to share across threads; the
/// memo takes concurrent readers and exclusive inserts.
#[derive(Debug, Default)]
pub struct Evaluator {
    memo: RwLock<HashMap<MemoKey, Poly>>,
}

impl Evaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo lock poisoned").len()
    }

    /// `Σ_k tr(z, H^{2k}(B_N)) x^k` for `N` of Jordan type `λ`.
    ///
    /// For very even `λ` in series `D` this is the common value of the two
    /// orbits `λ±`.
    pub fn graded_trace(
        &self,
        partition: &Partition,
        z: &ComponentElement,
        series: Series,
    ) -> Result<Poly> {
        partition.ensure_valid(series)?;
        z.ensure_in_a(partition, series)?;
        self.trace(series, partition, z)
    }

    fn trace(&self, series: Series, partition: &Partition, z: &ComponentElement) -> Result<Poly> {
        if let Some(p) = base_case(series, partition) {
            return Ok(p);
        }
        let key = (series, partition.clone(), z.clone());
        if let Some(p) = self.memo.read().expect("memo lock poisoned").get(&key) {
            return Ok(p.clone());
        }

        let expansion = expand_restriction(partition, z, series)?;
        let mut total = Poly::zero();
        for term in expansion.live_terms() {
            let child = term.child.as_partition().expect("live term");
            total += &(&term.coeff * &self.trace(series, child, &term.child_z)?);
        }
        if !total.is_integral_nonneg().0 {
            return Err(Error::NonIntegral {
                partition: partition.clone(),
                z: z.clone(),
                poly: total.to_string(),
            });
        }
        self.memo
            .write()
            .expect("memo lock poisoned")
            .entry(key)
            .or_insert_with(|| total.clone());
        Ok(total)
    }

    /// Betti numbers `[b_0, b_2, b_4, ...]` of the Springer fiber.
    pub fn betti_numbers(&self, partition: &Partition, series: Series) -> Result<Vec<BigInt>> {
        let poly = self.graded_trace(partition, &ComponentElement::identity(), series)?;
        Ok(poly.integer_coeffs().expect("graded traces are integral"))
    }

    /// Every valid `(λ, z)` at rank `n`, partitions in reverse lexicographic
    /// order and `z` in binary-counting order. Rows are evaluated on the
    /// current rayon pool; the order does not depend on the pool size.
    pub fn full_table(&self, series: Series, rank: usize) -> Result<Vec<TableRow>> {
        let pairs: Vec<(Partition, ComponentElement)> = valid_partitions(series, rank)
            .into_iter()
            .flat_map(|p| {
                enumerate_a(&p, series)
                    .into_iter()
                    .map(move |z| (p.clone(), z))
            })
            .collect();
        pairs
            .into_par_iter()
            .map(|(partition, z)| {
                let poly = self.graded_trace(&partition, &z, series)?;
                let very_even = partition.validate(series).very_even;
                Ok(TableRow {
                    partition,
                    z,
                    poly,
                    very_even,
                })
            })
            .collect()
    }
}

/// Graded trace with a throwaway memo.
pub fn graded_trace(partition: &Partition, z: &ComponentElement, series: Series) -> Result<Poly> {
    Evaluator::new().graded_trace(partition, z, series)
}

pub fn betti_numbers(partition: &Partition, series: Series) -> Result<Vec<BigInt>> {
    Evaluator::new().betti_numbers(partition, series)
}

pub fn full_table(series: Series, rank: usize) -> Result<Vec<TableRow>> {
    Evaluator::new().full_table(series, rank)
}
