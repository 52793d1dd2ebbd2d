"""
System Test Script

Quick check that every component is wired together. Run directly for a
step-by-step printout, or through pytest.
"""

import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent / 'src'))


def step_finite_fields():
    from algebra.finite_field import GF
    F = GF(2, 3)
    return f"F_{F.q} with primitive element {F.generator}"


def step_witt_vectors():
    from algebra.finite_field import GF
    from algebra.witt import GaloisRing
    R = GaloisRing(GF(2, 2), 3)
    return f"{R} built"


def step_extension():
    from local_fields.extension import galois_group
    from local_fields.scenarios import Scenarios
    from utils.config import build_tower, job_from_dict
    _, ext = build_tower(job_from_dict({'scenario': 'q2_i'}))
    gal = galois_group(ext)
    return f"{ext.top.name}/{ext.base.name}: |G| = {gal.order}, {len(Scenarios.all_scenarios())} scenarios"


def step_ramification():
    from local_fields.ramify import lower_filtration, upper_breaks
    from utils.config import build_tower, job_from_dict
    _, ext = build_tower(job_from_dict({'scenario': 'q3_sqrt_m3'}))
    return f"upper breaks of Q_3(sqrt(-3)): {[str(b) for b in upper_breaks(lower_filtration(ext))]}"


def step_tate_cohomology():
    from cohomology.groups import cyclic
    from cohomology.tatecoh import GModule, tate_cohomology
    h0 = tate_cohomology(GModule.integers(cyclic(3)), 0)
    return f"H^0(Z/3, Z) = {h0}"


def step_reciprocity():
    from reciprocity.lcft import norm_coset_group
    from utils.config import build_tower, job_from_dict
    _, ext = build_tower(job_from_dict({'scenario': 'q2_i'}))
    return f"K^x/NL^x for Q_2(i) = {norm_coset_group(ext).group}"


STEPS = [
    ("Finite Fields", step_finite_fields),
    ("Witt Vectors", step_witt_vectors),
    ("Local Field Extensions", step_extension),
    ("Ramification", step_ramification),
    ("Tate Cohomology", step_tate_cohomology),
    ("Norm Cosets", step_reciprocity),
]


def test_system_steps():
    for _, step in STEPS:
        assert step()


if __name__ == "__main__":
    print("=" * 70)
    print("LOCAL CLASS FIELD THEORY LAB - COMPONENT TESTS")
    print("=" * 70)

    for n, (title, step) in enumerate(STEPS, 1):
        print(f"\n[{n}/{len(STEPS)}] Testing {title}...")
        try:
            print(f"✓ {step()}")
        except Exception as e:
            print(f"✗ Error: {e}")
            sys.exit(1)

    print("\n" + "=" * 70)
    print("ALL TESTS PASSED! ✓")
    print("=" * 70)
    print("\nYou can now:")
    print("  1. Verify a job: poetry run lcft verify configs/q2_i.yaml")
    print("  2. Inspect ramification: poetry run lcft info configs/q3_sqrt_m3.yaml")
    print("  3. Run the full test suite: poetry run pytest")
    print("=" * 70)
