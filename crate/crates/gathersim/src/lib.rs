//! Deterministic synchronous simulator and protocol library for
//! self-stabilizing perpetual gathering of mobile agents on anonymous
//! port-labeled graphs in the presence of weakly Byzantine agents.
//!
//! Agents move on a graph whose nodes carry no observable identity; each
//! node numbers its incident edges locally. Agents have unique IDs, run in
//! synchronous rounds, shout their states to co-located agents, and may
//! start from arbitrarily corrupted memory. Byzantine agents can announce
//! falsified states and move arbitrarily, but cannot forge their IDs. The
//! protocol drives every non-Byzantine agent into a single travelling
//! group within a provable round bound, and this crate verifies those
//! bounds and the supporting invariants exhaustively at small scale:
//!
//! - [`graph`]: port-labeled graphs, generators, and compositions.
//! - [`exploration`]: exploration sequences with machine-checked coverage.
//! - [`rendezvous`]: the label-driven rendezvous schedule and its
//!   exhaustive meeting-time certifier.
//! - [`agent`]: the per-agent protocol state machine (trust matrix,
//!   confidence graph, seed selection).
//! - [`adversary`]: pluggable Byzantine strategies.
//! - [`engine`]: the synchronous round scheduler, tracing, convergence
//!   detection, and invariant checkers.
//! - [`harness`]: scenario files, certificate cache, batch runs, and the
//!   impossibility demos.
//!
//! See the crate examples for one runnable program per capability, and
//! the `gathersim` binary for the `run`, `certify`, `demo`, and `batch`
//! commands.

pub mod adversary;
pub mod agent;
pub mod engine;
pub mod exploration;
pub mod graph;
pub mod harness;
pub mod rendezvous;
