"""Weight-bound queries and model checking on a small robot model.

A vacuum robot waits, cleans, or charges.  Transition weights are time
costs; parallel transitions capture uncertainty, so the interesting
questions are about the cheapest and dearest way of reaching a state.
"""

from wtl import model_check, parse_formula, parse_wts, sat_set

MODEL = b"""
{"states": [{"id": "s1", "labels": ["waiting"]},
            {"id": "s2", "labels": ["cleaning"]},
            {"id": "s3", "labels": ["charging"]}],
 "transitions": [{"from": "s1", "weight": "1", "to": "s1"},
                 {"from": "s1", "weight": "1", "to": "s3"},
                 {"from": "s1", "weight": "2", "to": "s3"},
                 {"from": "s3", "weight": "60", "to": "s1"},
                 {"from": "s3", "weight": "100", "to": "s1"},
                 {"from": "s1", "weight": "0", "to": "s2"},
                 {"from": "s2", "weight": "5", "to": "s1"},
                 {"from": "s2", "weight": "10", "to": "s1"},
                 {"from": "s2", "weight": "15", "to": "s1"}]}
"""


def main():
    robot = parse_wts(MODEL)

    print("From the cleaning state back to waiting the robot may need")
    weights = sorted(robot.image_set("s2", {"s1"}))
    print(f"  any of {[str(w) for w in weights]} time units,")
    print(f"  so at least {robot.theta_min('s2', {'s1'})}"
          f" and at most {robot.theta_max('s2', {'s1'})}.\n")

    print("Can the robot always reach the charger within one time unit?")
    quick = parse_formula("M[1] charging")
    print(f"  M[1] charging at s1 -> {model_check(robot, 's1', quick)}")
    print(f"  (the dearest route costs "
          f"{robot.theta_max('s1', sat_set(robot, parse_formula('charging')))})")
    relaxed = parse_formula("M[2] charging")
    print(f"  M[2] charging at s1 -> {model_check(robot, 's1', relaxed)}\n")

    print("The diamond <> is the zero lower bound: some transition exists.")
    print(f"  <> cleaning at s1 -> {model_check(robot, 's1', parse_formula('<> cleaning'))}")
    print(f"  <> cleaning at s3 -> {model_check(robot, 's3', parse_formula('<> cleaning'))}")

    print("\nStates where every outgoing transition stays in waiting-or-cleaning:")
    boxed = parse_formula("[] (waiting | cleaning)")
    print(f"  {sorted(sat_set(robot, boxed))}")


if __name__ == "__main__":
    main()
