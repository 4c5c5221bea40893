#!/usr/bin/env python3
#
# SPDX-License-Identifier: Apache-2.0
#
"""Writes RDKit's SA score (normalized to [0, 1], 1 = easiest) for every
molecule of data/drug_like.smi. The RDKit table is built from PubChem, so
only the ordering is compared against ours."""

import os
import sys

from rdkit import Chem
from rdkit.Chem import RDConfig

sys.path.append(os.path.join(RDConfig.RDContribDir, "SA_Score"))
import sascorer  # noqa: E402


def main():
    root = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
    src = os.path.join(root, "data", "drug_like.smi")
    print("# RDKit SA score, (10 - raw) / 9; regenerate with tools/oracles/sa_oracle.py")
    print("smiles\tsa")
    with open(src) as f:
        for line in f:
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            raw = sascorer.calculateScore(Chem.MolFromSmiles(s.split()[0]))
            print("%s\t%.6f" % (s.split()[0], (10.0 - raw) / 9.0))


if __name__ == "__main__":
    main()
