//! Spectral toolkit for Fibonacci-type inflation tilings.
//!
//! The crate computes, renders and cross-validates the pure-point diffraction
//! of the Fibonacci chain and its relatives: a Bernoulli-randomised chain, a
//! bar-swapped four-letter chain, the planar direct product of two chains,
//! and all 48 rearrangements of that product. The central numerical engine is
//! the internal Fourier cocycle, which evaluates Fourier–Bohr amplitudes to
//! high accuracy even when the projection windows are Rauzy fractals.
//!
//! Modules:
//!
//! - [`golden`] — exact arithmetic in ℤ[τ] and the Fourier module ℤ[τ]/√5;
//! - [`inflation`] — inflation rules, substitution matrices, patches;
//! - [`cocycle`] — internal Fourier matrix, cocycle products, amplitudes;
//! - [`diffraction`] — peak enumeration, intensities, brute-force oracles;
//! - [`windows`] — graph-directed window IFS, rasters, classification.

pub mod cocycle;
pub mod diffraction;
pub mod golden;
pub mod inflation;
pub mod raster;
pub mod windows;
