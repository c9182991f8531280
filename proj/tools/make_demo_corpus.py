#!/usr/bin/env python3
"""Regenerates the synthetic demo corpus under data/demo/.

The corpus is fake software-engineering paper records (2008-2019) with a few
topics whose prevalence drifts over time, so the pipeline, keyword suite and
trend commands have something to show. Output is deterministic for a seed.
"""

import argparse
import json
import random
from pathlib import Path

TOPICS = {
    "requirements": (2008, ["requirements", "elicitation", "stakeholders", "specification",
                            "goals", "interviews", "traceability"]),
    "defects": (2008, ["defect", "prediction", "classification", "metrics",
                       "cross-project", "faults", "models"]),
    "smells": (2011, ["code", "smells", "refactoring", "anti-patterns", "developers",
                      "design", "detection"]),
    "clones": (2008, ["code", "clone", "clones", "detection", "similarity", "source"]),
    "testing": (2008, ["test", "case", "generation", "coverage", "mutation", "testing"]),
    "cloud": (2013, ["cloud", "migration", "services", "deployment", "microservices"]),
    "maintenance": (2008, ["maintenance", "evolution", "legacy", "reengineering", "changes"]),
    "security": (2008, ["security", "vulnerabilities", "attacks", "static", "taint"]),
    "performance": (2008, ["performance", "regression", "latency", "profiling", "bottlenecks"]),
    "mining": (2009, ["mining", "repositories", "commits", "issues", "history", "bug"]),
    "process": (2008, ["agile", "scrum", "teams", "process", "practices", "sprints"]),
    "models": (2008, ["model-driven", "uml", "metamodels", "transformation", "diagrams"]),
    "formal": (2008, ["formal", "verification", "model", "checking", "proofs", "specification"]),
    "api": (2010, ["api", "usage", "documentation", "libraries", "misuse"]),
    "ml": (2014, ["deep", "learning", "neural", "networks", "training", "prediction"]),
}

GENERIC = ["approach", "results", "study", "paper", "propose", "evaluate", "tool",
           "empirical", "analysis", "technique", "projects", "novel", "framework",
           "industrial", "open-source", "experiments", "show", "present", "systems",
           "software", "method", "data", "based", "support", "automated", "quality",
           "large", "real-world", "effective", "problem", "developers", "engineers",
           "existing", "information", "studies", "evaluation", "accuracy", "impact",
           "case", "datasets", "significant", "implementation", "challenges", "practice",
           "techniques", "research", "application", "components", "architecture",
           "program", "programs", "analyses", "user", "users", "open", "many", "new",
           "important", "current", "companies", "interview", "survey", "benchmark"]

STOP = ["the", "a", "of", "and", "in", "we", "to", "for", "with", "this", "that", "our"]


def weight(topic, year):
    start, _ = TOPICS[topic]
    if year < start:
        return 0.0
    if topic == "smells":
        return 0.5 + 0.25 * (year - start)
    if topic == "cloud":
        return 0.5 + 0.3 * (year - start)
    return 1.0


def sentence(rng, words):
    out = []
    for _ in range(rng.randint(6, 11)):
        r = rng.random()
        if r < 0.45:
            out.append(rng.choice(words))
        elif r < 0.65:
            out.append(rng.choice(STOP))
        else:
            out.append(rng.choice(GENERIC))
    text = " ".join(out)
    if rng.random() < 0.2:
        text += f" in {rng.randint(2, 99)} projects"
    return text[0].upper() + text[1:] + rng.choice([".", ".", ";", "!"])


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--seed", type=int, default=2021)
    parser.add_argument("--per-year", type=int, default=45)
    parser.add_argument("--out", type=Path, default=Path(__file__).parent.parent / "data" / "demo")
    args = parser.parse_args()
    rng = random.Random(args.seed)

    names = sorted(TOPICS)
    lines = []
    for year in range(2008, 2020):
        weights = [weight(t, year) for t in names]
        for n in range(args.per_year):
            topic = rng.choices(names, weights)[0]
            words = TOPICS[topic][1]
            title = " ".join(rng.sample(words, 3)).title()
            abstract = " ".join(sentence(rng, words) for _ in range(rng.randint(3, 5)))
            lines.append(json.dumps({"id": f"demo-{year}-{n:03d}", "title": title,
                                     "abstract": abstract, "year": year,
                                     "venue": rng.choice(["TSE", "ICSE", "MSR", "RE", "ICSME"])}))
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "corpus.jsonl").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
