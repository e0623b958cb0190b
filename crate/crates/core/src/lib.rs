//! Exact arithmetic for obstruction classes of genus-one curves with full
//! level structure over tame local fields.

pub mod arith;
pub mod brauer;
pub mod ec;
pub mod ff;
pub mod howell;
pub mod kummer;
pub mod obstruction;
pub mod theta;
pub mod valuation;
