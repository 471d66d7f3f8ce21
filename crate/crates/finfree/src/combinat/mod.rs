//! Partition and permutation combinatorics behind the moment-cumulant sums.

pub mod partition;
pub mod perm;

pub use partition::{
    catalan, cyclic_interval_images, enum_cyclic_intervals, enum_noncrossing, enum_partitions,
    for_each_noncrossing, for_each_partition, mobius_nc, mobius_nc_to_top, mobius_partition,
    mobius_partition_to_top, nc_cached, SetPartition, MAX_NC_N, MAX_PARTITION_N,
};
pub use perm::{enum_annular, kreweras_annular, Perm, MAX_ANNULAR_N};
