//! Bench-only crate: shared fixtures for the criterion harness.

use finadd_core::rat::rat;
use finadd_core::{Assessment, AtomSpace, Event, Rat};

/// A coherent assessment over `atoms` atoms with one event per atom
/// pair, priced additively from a fixed weight vector.
pub fn pairwise_assessment(atoms: usize) -> Assessment {
    let space = AtomSpace::new(atoms).expect("small space");
    let total = (atoms * (atoms + 1) / 2) as i64;
    let weights: Vec<Rat> = (1..=atoms as i64).map(|i| rat(i, total)).collect();
    let mut entries: Vec<(Event, Rat)> = Vec::new();
    for i in 0..atoms {
        for j in i + 1..atoms {
            let event = space.event_from_atoms(&[i, j]).expect("atoms in range");
            let price = &weights[i] + &weights[j];
            entries.push((event, price));
        }
    }
    Assessment::new(space, entries).expect("well formed")
}
