pub mod cli;
pub mod exactalg;
pub mod ffcount;
pub mod hlvkernel;
pub mod partitions;
pub mod series;
pub mod macdonald;
pub mod symfunc;
