pub mod entropy;
pub mod filter;
pub mod index;
pub mod sketch;
pub mod stream;
