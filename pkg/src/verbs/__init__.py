# src/verbs/__init__.py

# Import every verb runner from its own file
from .satake import run_satake
from .table1 import run_table1
from .cohomology import run_cohomology
from .delta import run_delta
from .verify import run_verify


# The verb registry, mapping command names to the function that runs them
all_verbs = {
    "satake": run_satake,
    "table1": run_table1,
    "cohomology": run_cohomology,
    "delta": run_delta,
    "verify": run_verify,
}
