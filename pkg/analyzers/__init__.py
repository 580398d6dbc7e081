"""OGC analyzers: codes, spreads, caps, Hadamard matrices, acceptance suites and export."""
