#!/usr/bin/env python3
"""Regenerates the bundled corpus fixtures. Run from this directory."""
import json
import os

HERE = os.path.dirname(os.path.abspath(__file__))

IMPLICATION = [
    ("beta_scale", "alpha_mode", "auto"),
    ("sample_rate", "window_kind", "hann"),
    ("gram_matrix", "solver_name", "lars"),
    ("prior_mean", "shrink_rule", "oas"),
    ("class_weight", "loss_kind", "hinge"),
    ("warm_start", "penalty_type", "l2"),
    ("base_score", "boost_mode", "tree"),
    ("init_state", "method_name", "exact"),
    ("group_sizes", "split_mode", "group"),
    ("time_index", "freq_alias", "daily"),
    ("seed_value", "backend_name", "loky"),
    ("mask_array", "fill_policy", "zero"),
]

CONJUNCTION = [
    ("max_depth", 3, "min_split", 2),
    ("num_rounds", 10, "tree_count", 5),
    ("batch_size", 8, "queue_size", 4),
    ("grid_width", 16, "grid_height", 9),
    ("min_count", 2, "max_terms", 6),
    ("page_limit", 20, "row_limit", 50),
    ("top_nodes", 12, "leaf_nodes", 7),
    ("warmup_steps", 100, "decay_steps", 200),
]


def implication_record(i, p, q, lit):
    code = (
        f"def configure({q}, {p}=None):\n"
        f"    if {p} is not None and {q} != \"{lit}\":\n"
        f"        raise ValueError(\"{p} requires {q} to be {lit}\")\n"
    )
    doc = f"If {p} is given, {q} must be \"{lit}\"."
    return {
        "repo": "fixture/consistent",
        "sha": "0" * 7,
        "file_path": f"consistent/impl_{i:02d}.py",
        "owner": "configure",
        "doc_text": doc,
        "constraint_text": f"({p} != None) -> ({q} = \"{lit}\")",
        "code_source": code,
        "label": "Consistent",
    }


def conjunction_record(i, p, pv, q, qv):
    code = (
        f"def set_limits({p}, {q}):\n"
        f"    if {p} < {pv}:\n"
        f"        raise ValueError(\"{p} must be at least {pv}\")\n"
        f"    if {q} < {qv}:\n"
        f"        raise ValueError(\"{q} must be at least {qv}\")\n"
    )
    doc = f"{p} must be at least {pv} and {q} must be at least {qv}."
    return {
        "repo": "fixture/consistent",
        "sha": "0" * 7,
        "file_path": f"consistent/conj_{i:02d}.py",
        "owner": "set_limits",
        "doc_text": doc,
        "constraint_text": f"({p} >= {pv}) ^ ({q} >= {qv})",
        "code_source": code,
        "label": "Consistent",
    }


AUTOREG_CODE = """def __init__(self, trend, seasonal, deterministic=None):
    self.trend = trend
    self.seasonal = seasonal
    self.deterministic = deterministic
    if deterministic is not None and (self.trend != "n" or self.seasonal):
        warnings.warn('When using deterministic, trend must be "n" and seasonal must be False')
"""

SPECTRAL_CODE = """def fit(self, X, y=None):
    if self.affinity == "nearest_neighbors":
        self.affinity_matrix_ = kneighbors_graph(X, self.n_neighbors)
    elif self.affinity == "precomputed_nearest_neighbors":
        self.affinity_matrix_ = check_symmetric(X)
    elif self.affinity == "precomputed":
        self.affinity_matrix_ = X
    else:
        params = self.kernel_params
        if params is None:
            params = {}
        if not callable(self.affinity):
            params["gamma"] = self.gamma
            params["degree"] = self.degree
            params["coef0"] = self.coef0
        self.affinity_matrix_ = pairwise_kernels(X, metric=self.affinity, filter_params=True)
    return self
"""

LARS_CODE = """def lars_path(X, y, Gram=None, max_iter=500):
    if X is None and Gram is not None:
        raise ValueError("X cannot be None if Gram is not None. Use lars_path_gram to avoid passing X and y.")
"""


def golden(corrected):
    autoreg = (
        '(deterministic != None) -> ((trend = "n") ^ (seasonal = False))'
        if corrected
        else '(deterministic != None) -> ((trend != "n") ^ (seasonal != False))'
    )
    spectral = (
        '((affinity = "nearest_neighbors") v ((affinity = "precomputed_nearest_neighbors") v (affinity = "precomputed"))) -> (ignore(gamma))'
        if corrected
        else '(affinity = "nearest_neighbors") -> (ignore(gamma))'
    )
    lars = (
        "(X = None) -> (Gram = None)" if corrected else "(X = None) -> (Gram != None)"
    )
    label = "Consistent" if corrected else "Inconsistent"
    return [
        {
            "repo": "statsmodels/statsmodels",
            "sha": "6e48b47",
            "file_path": "statsmodels/tsa/ar_model.py",
            "owner": "AutoReg",
            "doc_text": 'A deterministic process. If provided, trend and seasonal are ignored. A warning is raised if trend is not "n" and seasonal is not False.',
            "constraint_text": autoreg,
            "code_source": AUTOREG_CODE,
            "label": label,
        },
        {
            "repo": "scikit-learn/scikit-learn",
            "sha": "1f42d30",
            "file_path": "sklearn/cluster/_spectral.py",
            "owner": "SpectralClustering.fit",
            "doc_text": 'Kernel coefficient for rbf, poly, sigmoid, laplacian and chi2 kernels. Ignored for affinity="nearest_neighbors".',
            "constraint_text": spectral,
            "code_source": SPECTRAL_CODE,
            "label": label,
        },
        {
            "repo": "scikit-learn/scikit-learn",
            "sha": "9c8fea2",
            "file_path": "sklearn/linear_model/_least_angle.py",
            "owner": "lars_path",
            "doc_text": "Input data. Note that if X is None then the Gram matrix must be specified, i.e., cannot be None or False.",
            "constraint_text": lars,
            "code_source": LARS_CODE,
            "label": label,
        },
    ]


def write(name, records):
    path = os.path.join(HERE, "corpus", name)
    with open(path, "w") as f:
        for r in records:
            f.write(json.dumps(r) + "\n")
    print("wrote", path, len(records))


def main():
    records = [implication_record(i, *t) for i, t in enumerate(IMPLICATION)]
    records += [conjunction_record(i, *t) for i, t in enumerate(CONJUNCTION)]
    write("consistent20.jsonl", records)
    write("golden.jsonl", golden(False))
    write("golden_corrected.jsonl", golden(True))


if __name__ == "__main__":
    main()
