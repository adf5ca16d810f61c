#!/usr/bin/env python3
# Copyright 2026 The qkb Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Download the three UCI files into data/.

Usage: fetch_datasets.py [--dest DIR] [--offline-fallback]

With --offline-fallback, iris.data and wdbc.data are rebuilt from the copies
bundled with scikit-learn when the UCI server is unreachable. Those copies
carry the same rows and values; wdbc IDs are replaced by row numbers. There
is no bundled copy of the banknote file.
"""

import argparse
import pathlib
import sys
import urllib.request

UCI = "https://archive.ics.uci.edu/ml/machine-learning-databases/"
FILES = {
    "iris.data": UCI + "iris/iris.data",
    "wdbc.data": UCI + "breast-cancer-wisconsin/wdbc.data",
    "data_banknote_authentication.txt": UCI + "00267/data_banknote_authentication.txt",
}


def download(url, path):
    with urllib.request.urlopen(url, timeout=30) as resp:
        path.write_bytes(resp.read())


def iris_from_sklearn(path):
    from sklearn.datasets import load_iris

    d = load_iris()
    names = ["Iris-setosa", "Iris-versicolor", "Iris-virginica"]
    with path.open("w") as f:
        for x, y in zip(d.data, d.target):
            f.write(",".join(f"{v:.1f}" for v in x) + f",{names[y]}\n")


def wdbc_from_sklearn(path):
    from sklearn.datasets import load_breast_cancer

    d = load_breast_cancer()
    with path.open("w") as f:
        for i, (x, y) in enumerate(zip(d.data, d.target)):
            # sklearn: 0 = malignant, 1 = benign
            diag = "M" if y == 0 else "B"
            f.write(f"{i + 1},{diag}," + ",".join(repr(float(v)) for v in x) + "\n")


FALLBACK = {"iris.data": iris_from_sklearn, "wdbc.data": wdbc_from_sklearn}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--dest", default=str(pathlib.Path(__file__).resolve().parent.parent / "data"))
    ap.add_argument("--offline-fallback", action="store_true")
    args = ap.parse_args()
    dest = pathlib.Path(args.dest)
    dest.mkdir(parents=True, exist_ok=True)
    missing = []
    for name, url in FILES.items():
        path = dest / name
        if path.exists():
            print(f"{name}: present")
            continue
        try:
            download(url, path)
            print(f"{name}: downloaded")
        except OSError as e:
            if args.offline_fallback and name in FALLBACK:
                FALLBACK[name](path)
                print(f"{name}: rebuilt from scikit-learn ({e})")
            else:
                print(f"{name}: unavailable ({e})", file=sys.stderr)
                missing.append(name)
    return 1 if missing else 0


if __name__ == "__main__":
    sys.exit(main())
