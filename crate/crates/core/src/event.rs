//! Finite atom spaces, bitmask events, and price assessments.
//!
//! An [`AtomSpace`] is a finite partition of the sure event into `m`
//! atoms, optionally labelled. An [`Event`] is a subset of those atoms
//! stored as a bitmask, so Boolean structure is cheap and exact. An
//! [`Assessment`] pairs finitely many events with rational prices; it
//! carries no claim of consistency, which is the coherence checker's job.

use std::sync::Arc;

use crate::rat::{rat_int, Rat};

/// Default ceiling on the number of atoms, configurable per space.
pub const DEFAULT_ATOM_LIMIT: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EventError {
    #[error("atom space must contain at least one atom")]
    EmptySpace,
    #[error("requested {requested} atoms exceeds the limit of {limit}")]
    AtomLimitExceeded { requested: usize, limit: usize },
    #[error("atom labels must be pairwise distinct")]
    DuplicateLabels,
    #[error("atom index {atom} out of range for a space of {atom_count} atoms")]
    AtomOutOfRange { atom: usize, atom_count: usize },
    #[error("events belong to different atom spaces")]
    SpaceMismatch,
    #[error("assessment prices the same event twice with different values")]
    ConflictingPrices,
}

/// The finite partition underlying events and assessments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomSpace {
    atom_count: usize,
    labels: Option<Arc<[String]>>,
}

impl AtomSpace {
    pub fn new(atom_count: usize) -> Result<Self, EventError> {
        Self::with_limit(atom_count, DEFAULT_ATOM_LIMIT)
    }

    pub fn with_limit(atom_count: usize, limit: usize) -> Result<Self, EventError> {
        if atom_count == 0 {
            return Err(EventError::EmptySpace);
        }
        if atom_count > limit {
            return Err(EventError::AtomLimitExceeded { requested: atom_count, limit });
        }
        Ok(AtomSpace { atom_count, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self, EventError> {
        let mut space = Self::new(labels.len())?;
        let mut seen = std::collections::BTreeSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(EventError::DuplicateLabels);
            }
        }
        space.labels = Some(labels.into());
        Ok(space)
    }

    pub fn atom_count(&self) -> usize {
        self.atom_count
    }

    pub fn label(&self, atom: usize) -> Option<&str> {
        self.labels.as_ref().and_then(|l| l.get(atom)).map(String::as_str)
    }

    /// The sure event.
    pub fn full_event(&self) -> Event {
        let mut e = Event::empty(self.clone());
        for word in e.bits.iter_mut() {
            *word = u64::MAX;
        }
        e.mask_tail();
        e
    }

    pub fn empty_event(&self) -> Event {
        Event::empty(self.clone())
    }

    /// Event containing exactly the listed atoms.
    pub fn event_from_atoms(&self, atoms: &[usize]) -> Result<Event, EventError> {
        let mut e = Event::empty(self.clone());
        for &a in atoms {
            if a >= self.atom_count {
                return Err(EventError::AtomOutOfRange { atom: a, atom_count: self.atom_count });
            }
            e.bits[a / 64] |= 1u64 << (a % 64);
        }
        Ok(e)
    }
}

/// A subset of an atom space's atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    space: AtomSpace,
    bits: Vec<u64>,
}

impl Event {
    fn empty(space: AtomSpace) -> Self {
        let words = space.atom_count().div_ceil(64);
        Event { space, bits: vec![0; words] }
    }

    fn mask_tail(&mut self) {
        let rem = self.space.atom_count() % 64;
        if rem != 0 {
            if let Some(last) = self.bits.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn space(&self) -> &AtomSpace {
        &self.space
    }

    /// Membership of one atom. Panics when the index is out of range.
    pub fn contains(&self, atom: usize) -> bool {
        assert!(atom < self.space.atom_count(), "atom index out of range");
        self.bits[atom / 64] >> (atom % 64) & 1 == 1
    }

    /// The indicator value at an atom, as an exact scalar.
    pub fn indicator(&self, atom: usize) -> Rat {
        if self.contains(atom) {
            rat_int(1)
        } else {
            rat_int(0)
        }
    }

    pub fn union(&self, other: &Event) -> Result<Event, EventError> {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersect(&self, other: &Event) -> Result<Event, EventError> {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Event) -> Result<Event, EventError> {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Event {
        let mut out = self.clone();
        for w in out.bits.iter_mut() {
            *w = !*w;
        }
        out.mask_tail();
        out
    }

    fn zip_with(&self, other: &Event, op: impl Fn(u64, u64) -> u64) -> Result<Event, EventError> {
        if self.space != other.space {
            return Err(EventError::SpaceMismatch);
        }
        let mut out = self.clone();
        for (w, o) in out.bits.iter_mut().zip(&other.bits) {
            *w = op(*w, *o);
        }
        out.mask_tail();
        Ok(out)
    }

    pub fn cardinality(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|w| *w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.cardinality() == self.space.atom_count()
    }

    /// Ascending indices of the atoms in the event.
    pub fn atoms(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.space.atom_count()).filter(|&a| self.contains(a))
    }
}

/// Finitely many events with rational prices, over one atom space.
///
/// Prices are not range-restricted here: a price outside `[0, 1]` is a
/// legitimate input whose defect the coherence checker reports. Pricing
/// the same event twice is collapsed when the prices agree and rejected
/// otherwise. An assessment with no entries is allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assessment {
    space: AtomSpace,
    entries: Vec<(Event, Rat)>,
}

impl Assessment {
    pub fn new(space: AtomSpace, entries: Vec<(Event, Rat)>) -> Result<Self, EventError> {
        let mut kept: Vec<(Event, Rat)> = Vec::with_capacity(entries.len());
        for (event, price) in entries {
            if *event.space() != space {
                return Err(EventError::SpaceMismatch);
            }
            match kept.iter().find(|(e, _)| *e == event) {
                Some((_, existing)) if *existing == price => continue,
                Some(_) => return Err(EventError::ConflictingPrices),
                None => kept.push((event, price)),
            }
        }
        Ok(Assessment { space, entries: kept })
    }

    pub fn empty(space: AtomSpace) -> Self {
        Assessment { space, entries: Vec::new() }
    }

    pub fn space(&self) -> &AtomSpace {
        &self.space
    }

    pub fn entries(&self) -> &[(Event, Rat)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
