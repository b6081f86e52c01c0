//! Empty library target; the criterion benchmarks live in `benches/`.
