//! Component groups as elementary abelian 2-groups indexed by part sizes.
//!
//! An element `∏ z_i^{a_i}` is stored as the set of part sizes `i` with
//! `a_i = 1`. Multiplication is symmetric difference.

use std::{cmp::Ordering, collections::BTreeSet, fmt, str::FromStr};

use crate::{
    error::{Error, Result},
    partition::{Partition, Series},
};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ComponentElement {
    support: BTreeSet<u32>,
}

impl ComponentElement {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_parts<I: IntoIterator<Item = u32>>(parts: I) -> Self {
        let mut z = Self::identity();
        for i in parts {
            z.toggle(i);
        }
        z
    }

    pub fn generator(i: u32) -> Self {
        Self::from_parts([i])
    }

    pub fn is_identity(&self) -> bool {
        self.support.is_empty()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.support.contains(&i)
    }

    /// Exponent `a_i` in `{0, 1}`.
    pub fn exponent(&self, i: u32) -> u32 {
        u32::from(self.contains(i))
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.support.iter().copied()
    }

    pub fn cardinality(&self) -> usize {
        self.support.len()
    }

    /// Multiplies in place by `z_i`.
    pub fn toggle(&mut self, i: u32) {
        if !self.support.remove(&i) {
            self.support.insert(i);
        }
    }

    pub fn multiply(&self, other: &Self) -> Self {
        ComponentElement {
            support: self
                .support
                .symmetric_difference(&other.support)
                .copied()
                .collect(),
        }
    }

    /// Sets `z_i = id` whenever `m_i = 0` or `i` has the wrong parity for
    /// `series`. The transient index 0 is always dropped.
    pub fn canonical(&self, partition: &Partition, series: Series) -> Self {
        ComponentElement {
            support: self
                .support
                .iter()
                .copied()
                .filter(|&i| i > 0 && series.twists_part(i) && partition.multiplicity(i) > 0)
                .collect(),
        }
    }

    /// Whether this element lies in `A(λ)`: canonical, and of even
    /// cardinality in the orthogonal series.
    pub fn is_in_a(&self, partition: &Partition, series: Series) -> bool {
        &self.canonical(partition, series) == self
            && (series == Series::C || self.cardinality().is_multiple_of(2))
    }

    pub fn ensure_in_a(&self, partition: &Partition, series: Series) -> Result<()> {
        if self.is_in_a(partition, series) {
            Ok(())
        } else {
            Err(Error::NotInComponentGroup {
                z: self.clone(),
                partition: partition.clone(),
                series,
            })
        }
    }
}

/// Binary-counting order: the element with the largest part in the symmetric
/// difference is larger. Enumerations list `id, z2, z4, z2*z4, ...`.
impl Ord for ComponentElement {
    fn cmp(&self, other: &Self) -> Ordering {
        let top = self
            .support
            .symmetric_difference(&other.support)
            .max()
            .copied();
        match top {
            None => Ordering::Equal,
            Some(i) if self.contains(i) => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }
}

impl PartialOrd for ComponentElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ComponentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("id");
        }
        let names: Vec<String> = self.support.iter().map(|i| format!("z{i}")).collect();
        f.write_str(&names.join("*"))
    }
}

impl FromStr for ComponentElement {
    type Err = Error;

    /// Accepts `id` or a `*`-separated product such as `z2*z4`. Repeated
    /// generators cancel.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "id" || text == "1" {
            return Ok(Self::identity());
        }
        let mut z = Self::identity();
        for token in text.split('*') {
            let token = token.trim();
            let digits = token
                .strip_prefix('z')
                .or_else(|| token.strip_prefix("z_"))
                .ok_or_else(|| Error::ComponentSyntax(text.to_string()))?;
            let digits = digits.strip_prefix('_').unwrap_or(digits);
            let i: u32 = digits
                .parse()
                .map_err(|_| Error::ComponentSyntax(text.to_string()))?;
            if i == 0 {
                return Err(Error::ComponentSyntax(text.to_string()));
            }
            z.toggle(i);
        }
        Ok(z)
    }
}

/// Generators `z_i` of `Ã(λ)`: part sizes of the twisting parity present in `λ`,
/// ascending.
pub fn generators(partition: &Partition, series: Series) -> Vec<u32> {
    let mut gens: Vec<u32> = partition
        .distinct()
        .into_iter()
        .map(|(i, _)| i)
        .filter(|&i| series.twists_part(i))
        .collect();
    gens.sort_unstable();
    gens
}

/// All elements of `A(λ)`, identity first, in binary-counting order.
pub fn enumerate_a(partition: &Partition, series: Series) -> Vec<ComponentElement> {
    let gens = generators(partition, series);
    (0u64..1 << gens.len())
        .map(|mask| {
            ComponentElement::from_parts(
                gens.iter()
                    .enumerate()
                    .filter(|(bit, _)| mask >> bit & 1 == 1)
                    .map(|(_, &i)| i),
            )
        })
        .filter(|z| series == Series::C || z.cardinality() % 2 == 0)
        .collect()
}
