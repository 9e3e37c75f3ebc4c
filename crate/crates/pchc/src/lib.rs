//! Classification machinery for PC-HC families of vector fields on the
//! two-sphere.
//!
//! A PC-HC family is a generic two-parameter family whose degenerate member
//! has both a parabolic (semi-stable) limit cycle and a saddle-node with a
//! homoclinic trajectory. Such a family is classified by a finite
//! combinatorial invariant: a configuration word, four marked point sets on
//! an interval and a circle, and a liaison relation. This crate provides
//!
//! * exact-arithmetic types and decision procedures for those invariants
//!   ([`marked`], [`characteristic`], [`equiv`], [`config`]);
//! * combinatorial phase portraits as rotation-system graphs with
//!   validation, extraction, and bifurcation-support computation
//!   ([`skeleton`]);
//! * realizability checking and constructive realization of a skeleton
//!   from characteristic data ([`realization`]);
//! * the saddle-node interval-map model with time charts, the connection
//!   equation, and sparkling saddle-connection enumeration ([`dynamics`]);
//! * simple bifurcation diagram assembly and emission ([`diagram`]);
//! * JSON input documents and deterministic instance generation
//!   ([`io`], [`generate`]).

pub mod characteristic;
pub mod config;
pub mod diagram;
pub mod dynamics;
pub mod equiv;
pub mod generate;
pub mod io;
pub mod marked;
pub mod rational;
pub mod realization;
pub mod skeleton;
