pub mod cartan;
pub mod cli;
pub mod monomial;
pub mod crystal;
pub mod embed;
pub mod tableaux;
pub mod verify;
