/// Resource limits shared by the enumeration-heavy operations.
///
/// Every limit is checked before work starts where the size is known up
/// front, and reported as [`crate::Error::Budget`] otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    /// Maximum number of elements of an explicitly enumerated group.
    pub order: usize,
    /// Maximum group order for which the full subgroup lattice is computed.
    pub lattice: usize,
    /// Maximum number of tuple evaluations in brute-force law checking.
    pub tuples: u64,
    /// Maximum number of elements in an enumerated ball.
    pub ball: usize,
    /// Maximum permutation degree produced by constructions.
    pub degree: usize,
    /// Depth used by tree probes (germ stabilisers, regularity probes).
    pub probe_depth: usize,
    /// Default index bound for hereditary minimality.
    pub index_bound: usize,
    /// Maximum number of search nodes in the low-index subgroup search.
    pub search_nodes: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            order: 1_000_000,
            lattice: 2000,
            tuples: 10_000_000,
            ball: 2_000_000,
            degree: 1 << 16,
            probe_depth: 6,
            index_bound: 12,
            search_nodes: 5_000_000,
        }
    }
}
