//! Exact engine for finitely additive probability.
//!
//! The crate has three layers. The base layer gives arbitrary-precision
//! rational scalars ([`rat`]), finite atom spaces with bitmask events
//! ([`event`]), and an exact two-phase simplex ([`simplex`]). On top of it,
//! [`coherence`] decides whether a finite price assessment admits a Dutch
//! book, producing certificates checkable by hand in either direction, and
//! bounds the coherent prices of a new event. The remaining modules study
//! finitely additive limits: natural density and limit laws on the
//! integers ([`limits`]), finitely additive distribution functions with
//! adherent mass ([`pd`]), pathological coin-flip processes built from a
//! density law ([`bernoulli`]), and a floating-point laboratory for
//! characteristic functions of stationary independent-increment processes
//! ([`fisi`]).
//!
//! Everything outside [`fisi`] computes in exact rational arithmetic; no
//! verdict in those modules depends on floating point.

pub mod bernoulli;
pub mod coherence;
pub mod event;
pub mod fisi;
pub mod limits;
pub mod pd;
pub mod rat;
pub mod schema;
pub mod simplex;

pub use coherence::{CoherenceVerdict, DutchBook, ExtensionInterval};
pub use event::{Assessment, AtomSpace, Event, EventError};
pub use rat::{format_rat, parse_rat, Rat};
