//! Timing of decomposition and coding on seeded random planar graphs.

use std::time::Instant;

use crate::canon::{code_components, decompose};
use crate::error::Result;
use crate::generators::{gen_random_planar, GenKind, GenSpec};

pub const CSV_HEADER: &str = "n,preprocess_ms,code_ms";

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub preprocess_ms: f64,
    pub code_ms: f64,
}

/// Random planar graph used for size `n`: about two edges per node.
pub fn bench_spec(n: usize, seed: u64) -> GenSpec {
    let max = if n >= 3 {
        3 * n - 6
    } else {
        n.saturating_sub(1)
    };
    GenSpec {
        kind: GenKind::RandomPlanar,
        n,
        m: (2 * n).min(max),
        seed,
        count: 1,
    }
}

/// One row per size, in the order given. Preprocessing covers the
/// planarity test and both decompositions; coding covers the rest.
pub fn bench(sizes: &[usize], seed: u64) -> Result<Vec<BenchRow>> {
    sizes
        .iter()
        .map(|&n| {
            let g = gen_random_planar(&bench_spec(n, seed))?.remove(0);
            let t0 = Instant::now();
            let parts = decompose(&g)?;
            let preprocess_ms = t0.elapsed().as_secs_f64() * 1e3;
            let t1 = Instant::now();
            code_components(parts)?;
            let code_ms = t1.elapsed().as_secs_f64() * 1e3;
            Ok(BenchRow {
                n,
                preprocess_ms,
                code_ms,
            })
        })
        .collect()
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{:.3},{:.3}\n",
            r.n, r.preprocess_ms, r.code_ms
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_rows_in_order() {
        let rows = bench(&[200, 1000], 1).unwrap();
        assert_eq!(
            rows.iter().map(|r| r.n).collect::<Vec<_>>(),
            vec![200, 1000]
        );
        assert!(rows
            .iter()
            .all(|r| r.code_ms.is_finite() && r.preprocess_ms >= 0.0));
        let csv = to_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert!(lines.next().unwrap().starts_with("200,"));
    }
}
