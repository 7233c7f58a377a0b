pub mod additive;
pub mod bohr;
pub mod bracket;
pub mod cli;
pub mod equidist;
pub mod error;
pub mod gowers;
pub mod nilgroup;
pub mod primes;
pub mod real;
pub mod sample;
pub mod seqfun;
pub mod sum;
pub mod verify;
