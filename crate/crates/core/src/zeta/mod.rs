//! Exact arithmetic for zeta functions of varieties over finite fields:
//! point counts, symmetric-power counts, trace-formula counts, finite
//! differences, and the binomial and factorial lemmas.

mod bound;
mod combinatorics;
mod counts;
pub mod poly;
mod rational;
mod series;

pub use bound::{second_pole_bound, BoundRow, PoleBound};
pub use combinatorics::{
    gcd_binomials, gcd_binomials_direct, legendre, prime_power, valp_prime_power_factorial, BinomialGcd,
    FactorialValuation,
};
pub use counts::{
    counts_from_sym_counts, counts_of_zeta, lefschetz_counts, power_sums, sym_counts_from_counts,
    zeta_series_of_counts, EigenvalueData, PointCounts,
};
pub use rational::{
    connectedness_check, expand_zeta, finite_difference_series, load_zeta_file, Connectedness, RationalZeta,
    ZetaDocument,
};
pub use series::PowerSeries;
