"""Regenerates the bundled asset files under src/causeway/assets/.

The assets are frozen data; this script exists so they can be rebuilt
reproducibly if the variable schema or scenario parameterization changes.
Run from the repo root: python3 tools/make_assets.py
"""
import json
import pathlib

import numpy as np

import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from causeway import dagfile
from causeway.graph import CausalDag, Variable
from causeway.scm import Cpt, ScmSpec, format_scm

ASSETS = pathlib.Path(__file__).resolve().parents[1] / "src" / "causeway" / "assets"

VARIABLES = [
    Variable("1stConcernWhileStuckInTraffic",
             ("ExtraTravelTime", "SpeedReduction", "DelayCost"), "ExtraTravelTime"),
    Variable("Age", ("Young", "Middle", "Old"), "Young"),
    Variable("Education", ("PostGraduate", "College", "HighSchool"), "PostGraduate"),
    Variable("EmploymentStatus", ("Unemployed", "PartTime", "FullTime", "Student"), "Unemployed"),
    Variable("FamiliarityWithEnvironment", ("OnceAWeek", "OnceAMonth", "OnceAYear"), "OnceAWeek"),
    Variable("FinancialConcern", ("No", "Yes"), "No"),
    Variable("Gender", ("Female", "Male"), "Female"),
    Variable("Race", ("White", "MiddleEastern", "Other"), "White"),
    Variable("RouteChoice", ("Stay", "ExitA", "ExitB", "ExitC", "ExitD", "ExitE"), "Stay"),
    Variable("SocialImpact", ("No", "Yes"), "No"),
    Variable("Traffic", ("Normal", "Medium", "Heavy"), "Normal"),
    Variable("Urgency", ("NonUrgent", "Urgent"), "NonUrgent"),
]

# Final reference model. FamiliarityWithEnvironment and FinancialConcern are
# deliberately edge-free: no relation for them is established, so they stay
# isolated rather than guessed. Age->Education and Race->Education are needed
# for the documented (Education, RouteChoice) adjustment set and are marked
# inferred in the file comment.
FINAL_EDGES = [
    ("Traffic", "RouteChoice"),
    ("SocialImpact", "Traffic"),
    ("SocialImpact", "RouteChoice"),
    ("SocialImpact", "1stConcernWhileStuckInTraffic"),
    ("Gender", "Education"),
    ("Gender", "RouteChoice"),
    ("Age", "Education"),
    ("Race", "Education"),
    ("Education", "EmploymentStatus"),
    ("Age", "EmploymentStatus"),
    ("Age", "RouteChoice"),
    ("Race", "EmploymentStatus"),
    ("Race", "1stConcernWhileStuckInTraffic"),
    ("EmploymentStatus", "Urgency"),
    ("Urgency", "RouteChoice"),
]

PILOT_ONLY_EDGES = [
    ("Traffic", "1stConcernWhileStuckInTraffic"),
    ("1stConcernWhileStuckInTraffic", "RouteChoice"),
]


def softmax(x):
    e = np.exp(x - x.max())
    return e / e.sum()


def normalize_exact(p):
    p = np.asarray(p, float)
    p = p / p.sum()
    p[-1] = 1.0 - p[:-1].sum()
    return tuple(float(v) for v in p)


def build_reference_scm(graph: CausalDag, rng: np.random.Generator) -> ScmSpec:
    """Additive-logit CPTs: every parent level shifts every child level, so
    each edge is detectable in moderate samples; a 10% uniform floor keeps
    strata from going empty."""
    import itertools

    cpts = {}
    for v in graph.variables:
        parents = tuple(sorted(graph.parents(v.name)))
        k = len(v.levels)
        # near-uniform bases keep every stratum populated at moderate n;
        # effect sizes stay large enough that every edge is detectable
        base = rng.uniform(-0.25, 0.25, size=k)
        effects = {
            p: rng.uniform(-0.8, 0.8, size=(len(graph.variable(p).levels), k))
            for p in parents
        }
        parent_levels = [graph.variable(p).levels for p in parents]
        table = {}
        for combo in itertools.product(*parent_levels):
            score = base.copy()
            for p, lv in zip(parents, combo):
                score = score + effects[p][graph.variable(p).levels.index(lv)]
            probs = 0.75 * softmax(score) + 0.25 / k
            table[combo] = normalize_exact(probs)
        cpts[v.name] = Cpt(v.name, parents, table)
    return ScmSpec(graph, cpts)


def binary(name):
    return Variable(name, ("0", "1"))


def make_triangles():
    vz, vx, vy = binary("Z"), binary("X"), binary("Y")
    confounded = ScmSpec(
        CausalDag([vz, vx, vy], [("Z", "X"), ("Z", "Y"), ("X", "Y")]),
        {
            "Z": Cpt("Z", (), {(): (0.4, 0.6)}),
            "X": Cpt("X", ("Z",), {("0",): (0.75, 0.25), ("1",): (0.3, 0.7)}),
            "Y": Cpt("Y", ("X", "Z"), {
                ("0", "0"): (0.85, 0.15),
                ("0", "1"): (0.5, 0.5),
                ("1", "0"): (0.65, 0.35),
                ("1", "1"): (0.25, 0.75),
            }),
        },
    )
    null = ScmSpec(
        CausalDag([vz, vx, vy], [("Z", "X"), ("Z", "Y")]),
        {
            "Z": Cpt("Z", (), {(): (0.4, 0.6)}),
            "X": Cpt("X", ("Z",), {("0",): (0.75, 0.25), ("1",): (0.3, 0.7)}),
            "Y": Cpt("Y", ("Z",), {("0",): (0.8, 0.2), ("1",): (0.4, 0.6)}),
        },
    )
    vc = binary("C")
    collider = ScmSpec(
        CausalDag([vx, vy, vc], [("X", "Y"), ("X", "C"), ("Y", "C")]),
        {
            "X": Cpt("X", (), {(): (0.5, 0.5)}),
            "Y": Cpt("Y", ("X",), {("0",): (0.75, 0.25), ("1",): (0.45, 0.55)}),
            "C": Cpt("C", ("X", "Y"), {
                ("0", "0"): (0.8, 0.2),
                ("0", "1"): (0.3, 0.7),
                ("1", "0"): (0.4, 0.6),
                ("1", "1"): (0.1, 0.9),
            }),
        },
    )
    return confounded, null, collider


def write_study_descriptor():
    doc = {
        "format": "causeway-study-descriptor v1",
        "name": "route-choice-reference-study",
        "participants": 41,
        "scenarios_per_participant": 10,
        "unit_of_analysis": "participant-scenario",
        "contextual_factors": {
            "Traffic": ["Normal", "Medium", "Heavy"],
            "Urgency": ["Urgent", "NonUrgent"],
            "SocialImpact": ["Yes", "No"],
        },
        "scenarios": [
            {"Traffic": "Normal", "Urgency": "Urgent", "SocialImpact": "No"},
            {"Traffic": "Medium", "Urgency": "Urgent", "SocialImpact": "No"},
            {"Traffic": "Heavy", "Urgency": "Urgent", "SocialImpact": "No"},
            {"Traffic": "Medium", "Urgency": "Urgent", "SocialImpact": "Yes"},
            {"Traffic": "Heavy", "Urgency": "Urgent", "SocialImpact": "Yes"},
            {"Traffic": "Normal", "Urgency": "NonUrgent", "SocialImpact": "No"},
            {"Traffic": "Medium", "Urgency": "NonUrgent", "SocialImpact": "No"},
            {"Traffic": "Heavy", "Urgency": "NonUrgent", "SocialImpact": "No"},
            {"Traffic": "Medium", "Urgency": "NonUrgent", "SocialImpact": "Yes"},
            {"Traffic": "Heavy", "Urgency": "NonUrgent", "SocialImpact": "Yes"},
        ],
        "age_binning": {
            "note": "convention, not measured fact",
            "Young": "< 30",
            "Middle": "30-45",
            "Old": "> 45",
        },
        "outcome_mapping": {
            "variable": "RouteChoice",
            "diverted_levels": ["ExitA", "ExitB", "ExitC", "ExitD", "ExitE"],
            "stayed_levels": ["Stay"],
        },
        "notes": [
            "FamiliarityWithEnvironment and FinancialConcern carry no edges in the reference graph; their relations are not established and are left unmodeled.",
            "The pilot graph adds Traffic->1stConcernWhileStuckInTraffic and 1stConcernWhileStuckInTraffic->RouteChoice; the final graph drops both.",
            "Age->Education and Race->Education are inferred from the documented adjustment sets rather than stated directly.",
        ],
    }
    (ASSETS / "study_descriptor.json").write_text(json.dumps(doc, indent=2) + "\n")


def main():
    ASSETS.mkdir(parents=True, exist_ok=True)
    final_graph = CausalDag(VARIABLES, FINAL_EDGES)
    pilot_graph = CausalDag(VARIABLES, FINAL_EDGES + PILOT_ONLY_EDGES)
    (ASSETS / "reference_final.dag").write_text(dagfile.format_graph(
        final_graph,
        comment=(
            "Reference route-choice causal model (final revision).\n"
            "FamiliarityWithEnvironment and FinancialConcern are intentionally edge-free.\n"
            "Age->Education and Race->Education are inferred from the documented adjustment sets."
        ),
    ))
    (ASSETS / "reference_pilot.dag").write_text(dagfile.format_graph(
        pilot_graph,
        comment=(
            "Reference route-choice causal model (pilot revision).\n"
            "Adds Traffic->1stConcernWhileStuckInTraffic and\n"
            "1stConcernWhileStuckInTraffic->RouteChoice relative to the final model."
        ),
    ))
    rng = np.random.default_rng(20250817)
    ref_scm = build_reference_scm(final_graph, rng)
    (ASSETS / "reference_final.scm").write_text(format_scm(
        ref_scm, comment="Synthetic structural model over the final reference graph. CPTs are fixture data."
    ))
    confounded, null, collider = make_triangles()
    (ASSETS / "confounded_triangle.scm").write_text(format_scm(
        confounded, comment="Minimal confounded model: Z confounds X -> Y."
    ))
    (ASSETS / "null_triangle.scm").write_text(format_scm(
        null, comment="Null-effect model: Z drives X and Y; X has no effect on Y."
    ))
    (ASSETS / "collider_trap.scm").write_text(format_scm(
        collider, comment="Collider model: conditioning on C biases the X -> Y effect."
    ))
    write_study_descriptor()
    print("assets written to", ASSETS)


if __name__ == "__main__":
    main()
