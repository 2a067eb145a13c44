"""Random task-system generation, power-savings sweeps and the command-line interface."""
