//! Sequential or data-parallel mapping with results kept in input order.

/// How independent work items (framings, links) are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Uses the current rayon thread pool.
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for Execution {
    fn default() -> Execution {
        Execution::best()
    }
}

impl Execution {
    /// `Parallel` when the feature is enabled, otherwise `Sequential`.
    pub fn best() -> Execution {
        #[cfg(feature = "parallel")]
        {
            Execution::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            Execution::Sequential
        }
    }

    /// Maps `f` over `items`; the output order matches the input order.
    pub fn map<T, U, F>(self, items: Vec<T>, f: F) -> Vec<U>
    where
        T: Send,
        U: Send,
        F: Fn(T) -> U + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                items.into_par_iter().map(f).collect()
            }
            Execution::Sequential => items.into_iter().map(f).collect(),
        }
    }
}
