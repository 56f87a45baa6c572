// benchmarks only; see benches/
