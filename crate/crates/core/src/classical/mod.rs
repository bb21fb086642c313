//! Stickel's exponent protocol over invertible matrices mod a prime, and the
//! linear-algebra attack that breaks it.

mod attack;
mod fp;

pub use attack::{attack, attack_trials, run, AttackStats, ClassicalInstance};
pub use fp::{is_prime, solve, FpMatrix, LinearSystem, SolutionSpace};
