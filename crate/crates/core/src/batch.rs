//! Data-parallel evaluation over independent inputs.
//!
//! All library operations are pure, so batches need no coordination. With
//! the `parallel` feature (on by default) [`map`] runs on the rayon pool;
//! without it, or through [`sequential`], it is a plain iterator. Results
//! keep input order either way.

pub mod sequential {
    pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
    where
        F: Fn(&T) -> U,
    {
        items.iter().map(f).collect()
    }

    pub fn map_range<U, F>(n: usize, f: F) -> Vec<U>
    where
        F: Fn(usize) -> U,
    {
        (0..n).map(f).collect()
    }
}

#[cfg(feature = "parallel")]
pub mod parallel {
    use rayon::prelude::*;

    pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        items.par_iter().map(f).collect()
    }

    pub fn map_range<U, F>(n: usize, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(usize) -> U + Sync + Send,
    {
        (0..n).into_par_iter().map(f).collect()
    }
}

#[cfg(feature = "parallel")]
pub use parallel::{map, map_range};
#[cfg(not(feature = "parallel"))]
pub use sequential::{map, map_range};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{eval_str, Env};

    #[test]
    fn dispatch_matches_sequential() {
        let inputs: Vec<String> = (0..200).map(|i| format!("sin({i} + dt[3])")).collect();
        let run = |s: &String| eval_str(s, &Env::new()).unwrap();
        assert_eq!(map(&inputs, run), sequential::map(&inputs, run));
        assert_eq!(
            map_range(50, |i| i * i),
            sequential::map_range(50, |i| i * i)
        );
    }
}
