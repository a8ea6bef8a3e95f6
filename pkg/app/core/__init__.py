"""Domain logic: exactcas, algebra, skewer, invariants, norms, harness."""
