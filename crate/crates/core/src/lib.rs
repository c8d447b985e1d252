//! Simulation core for a desk-scale cell-free RAN stack.
//!
//! The crate is organized around the processing chain of a distributed
//! massive MIMO deployment:
//!
//! * [`channel`]: geometry, path loss, frequency-selective fading and RSRP.
//! * [`cellfree`]: pilot assignment, channel estimation, joint LMMSE
//!   detection, resource-block-grouped precoding and over-the-air
//!   reciprocity calibration.
//! * [`coding2d`]: spatiotemporal two-dimensional channel coding with a
//!   convolutional time code and a single-parity-check space code.
//! * [`icic`]: knowledge-graph data plane, conflict-graph construction and
//!   PRB-set coloring for inter-cell interference coordination, plus the
//!   epsilon-greedy parameter tuner.
//! * [`orchestrator`]: the three-timescale system simulation loop and the
//!   spectral-efficiency experiment driver.
//! * [`thzlink`]: heterodyne frequency plan, rate arithmetic and a DP-QPSK
//!   2x2 MIMO baseband BER simulation.
//!
//! All randomness is derived from explicit 64-bit seeds; every public entry
//! point is a pure function of its inputs, so results are reproducible
//! bit-for-bit, with or without the `parallel` feature.

pub mod cellfree;
pub mod channel;
pub mod coding2d;
pub mod error;
pub mod exec;
pub mod icic;
pub mod orchestrator;
pub mod rng;
pub mod thzlink;

pub use error::{Error, Result};
