"""Running the proof-system soundness suite.

Every schema is instantiated with random formulas, indices and models
and checked to hold at every state.  The deliberately broken control
schema (bound modalities distributing over conjunction without a
reachability guard) is expected to be caught red-handed.
"""

from wtl import run_suite


def main():
    report = run_suite(seed=2026, trials=300)
    print(f"{'schema':12} {'checked':>8} {'applicable':>11} {'violations':>11}")
    for name in sorted(report.schemas):
        entry = report.schemas[name]
        print(f"{name:12} {entry.checked:8d} {entry.applicable:11d} "
              f"{entry.violations:11d}")
    print(f"\nsound schemas violated:   {report.unexpected_violations}")
    print(f"control schema violated:  {report.control_violations}x")
    control = report.schemas["neg-control"]
    if control.first_violation:
        failure = control.first_violation
        print("\nfirst countermodel for the control schema:")
        print(f"  instance: {failure['instance']}")
        print(f"  fails at: {failure['failing_states']}")
        print("  " + failure["model"].replace("\n", "\n  "))


if __name__ == "__main__":
    main()
