"""One-off authoring script for the shipped red-meat case-study bundle.

Regenerates src/biparty/data/casestudy/{tree.json,profiles.csv,topics.json}.
Run from the repository root:  python tools/author_casestudy.py
"""

import csv
import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "biparty" / "data" / "casestudy"

TOPIC_UTILITIES = {
    "vegetarianism": 8,
    "fish-alternative": 6,
    "white-meat-alternative": 4,
    "thinking-alternatives": 3,
    "reduce-red-meat": 2,
}

# (id, kind, parent, arc label)
NODES = [
    ("n1", "decision", None, None),
    # APS openers
    ("n2", "chance", "n1", "Low red meat consumption is necessary for a healthy diet."),
    ("n3", "chance", "n1", "Processed and red meat are classified as carcinogenic to humans."),
    # user counterarguments
    ("n4", "decision", "n2", "I would not know what to cook instead."),
    ("n5", "decision", "n2", "I really like the taste of meat."),
    ("n6", "decision", "n2", "It is really difficult to change diet."),
    ("n7", "decision", "n3", "I do not eat that much meat anyway."),
    ("n8", "decision", "n3", "My family has always eaten meat every day."),
    # APS follow-ups
    ("n9", "chance", "n4", "Legumes and grains make rich main courses."),
    ("n10", "chance", "n4", "Fish dishes are quick and simple to cook."),
    ("n11", "chance", "n5", "White meat can be an alternative."),
    ("n12", "chance", "n5", "Fish is a tasty alternative to meat."),
    ("n13", "chance", "n6", "Think about the benefits of reducing red meat."),
    ("n14", "chance", "n6", "Try to reduce red meat slowly."),
    ("n15", "chance", "n7", "Even moderate red meat intake raises long-term health risk."),
    ("n16", "chance", "n7", "Replacing a single weekly meal with fish already helps."),
    ("n17", "chance", "n8", "Family traditions can evolve toward healthier habits."),
    ("n18", "chance", "n8", "Vegetarian dishes can honor traditional family cooking."),
    ("n19", "chance", "n8", "White meat fits most traditional recipes."),
    # user closing statements (leaves), tagged with the path topic
    ("n20", "leaf", "n9", "I could cook lentils more often.", "vegetarianism"),
    ("n21", "leaf", "n9", "A vegetarian cookbook might help me.", "vegetarianism"),
    ("n22", "leaf", "n10", "I could try fish twice a week.", "fish-alternative"),
    ("n23", "leaf", "n10", "Grilled fish actually sounds appealing.", "fish-alternative"),
    ("n24", "leaf", "n10", "Canned fish makes quick weekday meals.", "fish-alternative"),
    ("n25", "leaf", "n11", "Chicken dishes could work for me.", "white-meat-alternative"),
    ("n26", "leaf", "n11", "I would give turkey recipes a try.", "white-meat-alternative"),
    ("n27", "leaf", "n12", "Salmon does sound tasty.", "fish-alternative"),
    ("n28", "leaf", "n12", "I will keep steak for weekends only.", "reduce-red-meat"),
    ("n29", "leaf", "n13", "I will think over the health benefits.", "thinking-alternatives"),
    ("n30", "leaf", "n13", "Maybe I could plan one meat-free day.", "reduce-red-meat"),
    ("n31", "leaf", "n14", "A gradual change sounds doable.", "reduce-red-meat"),
    ("n32", "leaf", "n14", "I can start by skipping meat at lunch.", "reduce-red-meat"),
    ("n33", "leaf", "n15", "I will track my weekly portions.", "reduce-red-meat"),
    ("n34", "leaf", "n15", "I can cut down to once a week.", "reduce-red-meat"),
    ("n35", "leaf", "n16", "Fish once a week sounds fine.", "fish-alternative"),
    ("n36", "leaf", "n16", "I might alternate fish and chicken.", "white-meat-alternative"),
    ("n37", "leaf", "n17", "We could change gradually as a family.", "reduce-red-meat"),
    ("n38", "leaf", "n17", "I will discuss new habits at home.", "thinking-alternatives"),
    ("n39", "leaf", "n18", "Our pasta dishes are already vegetarian.", "vegetarianism"),
    ("n40", "leaf", "n18", "We could adopt meatless Sundays.", "vegetarianism"),
    ("n41", "leaf", "n19", "Roast chicken could replace the beef.", "white-meat-alternative"),
    ("n42", "leaf", "n19", "I will try white meat in our stew.", "white-meat-alternative"),
]

DEMO_COLUMNS = ["sex", "age", "school_degree", "meat_consumption", "physical_activity"]

# Encodings: sex 0=female 1=male; age in decades of years (22 years -> 2.2);
# school_degree 0=secondary 1=bachelor 2=master+; meat_consumption in red-meat
# servings per week; physical_activity 0=low 1=medium 2=high.
PROFILES = [
    ("young-student", [0, 2.2, 1, 3, 2]),
    ("career-woman", [0, 3.1, 2, 1, 0]),
    ("busy-father", [1, 4.4, 2, 10, 1]),
    ("retired-traditionalist", [1, 6.7, 0, 12, 0]),
    ("fitness-enthusiast", [1, 3.1, 0, 1, 2]),
    ("health-conscious-grandmother", [0, 6.7, 0, 0, 1]),
]

# topic affinity per profile: vegetarianism, fish, white meat, thinking, reduce
AFFINITY = {
    "young-student": {"vegetarianism": 9, "fish-alternative": 8,
                      "white-meat-alternative": 6, "thinking-alternatives": 5,
                      "reduce-red-meat": 4},
    "career-woman": {"vegetarianism": 10, "fish-alternative": 5,
                     "white-meat-alternative": 3, "thinking-alternatives": 7,
                     "reduce-red-meat": 5},
    "busy-father": {"vegetarianism": 2, "fish-alternative": 7,
                    "white-meat-alternative": 10, "thinking-alternatives": 4,
                    "reduce-red-meat": 5},
    "retired-traditionalist": {"vegetarianism": 2, "fish-alternative": 3,
                               "white-meat-alternative": 6,
                               "thinking-alternatives": 3, "reduce-red-meat": 9},
    "fitness-enthusiast": {"vegetarianism": 5, "fish-alternative": 10,
                           "white-meat-alternative": 8,
                           "thinking-alternatives": 4, "reduce-red-meat": 3},
    "health-conscious-grandmother": {"vegetarianism": 8, "fish-alternative": 10,
                                     "white-meat-alternative": 4,
                                     "thinking-alternatives": 8,
                                     "reduce-red-meat": 6},
}


def main() -> None:
    import numpy as np

    OUT.mkdir(parents=True, exist_ok=True)

    children: dict[str, list[str]] = {}
    for entry in NODES:
        node_id, _, parent = entry[0], entry[1], entry[2]
        children.setdefault(node_id, [])
        if parent is not None:
            children.setdefault(parent, []).append(node_id)

    leaves = [e for e in NODES if e[1] == "leaf"]
    leaf_topics = {e[0]: e[4] for e in leaves}
    nodes_json = []
    for entry in NODES:
        node_id, kind, _, label = entry[0], entry[1], entry[2], entry[3]
        node = {"id": node_id, "kind": kind, "children": children[node_id],
                "arc_label": label}
        if kind == "leaf":
            node["u_p"] = TOPIC_UTILITIES[leaf_topics[node_id]]
            node["u_o"] = None
        nodes_json.append(node)
    tree_doc = {
        "comment": ("Re-authored red-meat persuasion dialogue: 23 outcomes, "
                    "4 turns. Written for this project; not survey-derived."),
        "height": 4,
        "root": "n1",
        "nodes": nodes_json,
    }
    (OUT / "tree.json").write_text(json.dumps(tree_doc, indent=2) + "\n",
                                   encoding="utf-8")

    topics_doc = {
        "topic_utilities": TOPIC_UTILITIES,
        "leaf_topics": leaf_topics,
    }
    (OUT / "topics.json").write_text(json.dumps(topics_doc, indent=2) + "\n",
                                     encoding="utf-8")

    # Profile base utilities: topic affinity plus a fixed per-leaf nudge in
    # {-1, 0, 1} so leaves sharing a topic are not identical.
    rng = np.random.default_rng(20240117)
    leaf_ids = [e[0] for e in leaves]
    rows = []
    for name, demo in PROFILES:
        base = [AFFINITY[name][leaf_topics[leaf]] for leaf in leaf_ids]
        nudge = rng.integers(-1, 2, size=len(base))
        utilities = np.clip(np.array(base) + nudge, 1, 11)
        rows.append((name, demo, utilities.tolist()))

    with open(OUT / "profiles.csv", "w", encoding="utf-8", newline="") as fh:
        fh.write("# Re-authored user profiles (not survey data). Demographic\n")
        fh.write("# encodings: sex 0=female 1=male; age 0=18-25 1=26-35 2=36-50\n")
        fh.write("# 3=51+; school_degree 0=secondary 1=bachelor 2=master+;\n")
        fh.write("# meat_consumption / physical_activity 0=low 1=medium 2=high.\n")
        writer = csv.writer(fh)
        writer.writerow(["profile"] + [f"demo:{c}" for c in DEMO_COLUMNS]
                        + [f"leaf:{leaf}" for leaf in leaf_ids])
        for name, demo, utilities in rows:
            writer.writerow([name] + demo + utilities)
    print(f"wrote bundle to {OUT}")


if __name__ == "__main__":
    main()
