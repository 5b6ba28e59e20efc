mod finite;
mod spectrum;

pub use finite::{
    decomposition_by_w, enumerate_ideals, enumerate_ideals_with, ideal_cap, is_bsi, nn12_element, normal_primes,
    partition_primes, quotient, strict_square_ideals, IdealSet, PrimePartition, StrictSquareReport, WDecomposition,
    DEFAULT_IDEAL_CAP, IDEAL_CAP_ENV,
};
pub use spectrum::{lex_shape, symbolic_spectrum, FactorSpectrum, LevelIdeal, LexShape, SymbolicSpectrum};

#[cfg(test)]
mod tests;
