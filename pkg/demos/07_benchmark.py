"""Walkthrough: the headless performance benchmark.

Generates G(n, m) graphs at increasing sizes, runs the three scripted
scenarios, and prints core frame-time summaries. Small sizes keep this
demo quick; the CLI runs the full-size experiment:

    graphdive bench --nodes 2000 --degree 3 --scenario rotation --frames 600
"""
from graphdive.bench import Scenario, ScenarioKind, generate_er, report, run_scenario


def main() -> None:
    sizes = [(125, 375), (250, 750), (500, 1500)]
    print(f"{'n':>5} {'m':>5} {'scenario':>10} {'mean ms':>9} {'p95 ms':>8} {'fps-eq':>7}")
    for n, m in sizes:
        graph = generate_er(n, m, seed=42)
        for kind in ScenarioKind:
            timing = run_scenario(graph, Scenario(kind, frames=90, seed=42), warmup=10)
            print(f"{n:>5} {m:>5} {kind.value:>10} {timing.mean_ms:>9.3f} "
                  f"{timing.p95_ms:>8.3f} {timing.fps_equivalent:>7.0f}")

    graph = generate_er(125, 375, seed=42)
    timing = run_scenario(graph, Scenario(ScenarioKind.OVERVIEW_STATIC, 5, 42), warmup=2)
    print("\nCSV report shape:")
    print(report(timing, "csv"))


if __name__ == "__main__":
    main()
