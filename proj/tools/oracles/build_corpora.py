#!/usr/bin/env python3
"""Builds the bundled SMILES corpora under data/ from the NCI sample that
ships with RDKit. Needs RDKit; the build itself does not.

    python3 tools/oracles/build_corpora.py data
"""
import os
import random
import re
import sys

from rdkit import Chem, RDLogger
from rdkit.Chem import Descriptors

RDLogger.DisableLog('rdApp.*')

TOKEN = re.compile(r'(\[[^\]]*\]|Br|Cl|%\d\d|.)')
ORGANIC = {'B', 'C', 'N', 'O', 'P', 'S', 'F', 'Cl', 'Br', 'I'}
HALOGENS = {'F', 'Cl', 'Br', 'I'}


def nci_path():
    base = os.path.dirname(Chem.__file__)
    return os.path.join(os.path.dirname(base), 'Data', 'NCI', 'first_5K.smi')


def tokens(smi):
    return TOKEN.findall(smi)


def usable(mol):
    for a in mol.GetAtoms():
        if a.GetSymbol() not in ORGANIC and a.GetSymbol() != 'H':
            return False
        if a.GetSymbol() in HALOGENS and a.GetTotalValence() != 1:
            return False
    return True


def main(out_dir):
    rows = []
    for line in open(nci_path()):
        parts = line.split()
        if not parts:
            continue
        mol = Chem.MolFromSmiles(parts[0])
        if mol is None or not usable(mol):
            continue
        smi = Chem.MolToSmiles(mol)
        rows.append((smi, mol))

    seen = set()
    drug_like = []
    for smi, mol in rows:
        if smi in seen or len(smi) > 80 or '.' in smi:
            continue
        mw = Descriptors.MolWt(mol)
        if 120 <= mw <= 500:
            seen.add(smi)
            drug_like.append(smi)
    drug_like = drug_like[:600]

    aromatic, aliphatic = [], []
    for smi, mol in rows:
        n = len(tokens(smi))
        if '.' in smi or n < 8 or n > 40 or '[' in smi:
            continue
        ri = mol.GetRingInfo()
        has_benzene = mol.HasSubstructMatch(Chem.MolFromSmarts('c1ccccc1'))
        if has_benzene and all(a.GetSymbol() in {'C', 'N', 'O'} for a in mol.GetAtoms()):
            aromatic.append(smi)
        elif ri.NumRings() == 0 and all(a.GetSymbol() in {'C', 'N', 'O'} for a in mol.GetAtoms()):
            aliphatic.append(smi)
    aromatic = sorted(set(aromatic))
    aliphatic = sorted(set(aliphatic))
    rng = random.Random(7)
    rng.shuffle(aromatic)
    rng.shuffle(aliphatic)
    aromatic = aromatic[:160]
    aliphatic = aliphatic[:160]

    with open(os.path.join(out_dir, 'drug_like.smi'), 'w') as f:
        f.write('# NCI open database sample (RDKit Data/NCI/first_5K.smi), RDKit-canonical,\n')
        f.write('# length <= 80, MW 120-500, organic subset\n')
        for s in drug_like:
            f.write(s + '\n')
    with open(os.path.join(out_dir, 'toy_corpus.tsv'), 'w') as f:
        f.write('cluster\tsmiles\n')
        for s in aromatic:
            f.write('A\t' + s + '\n')
        for s in aliphatic:
            f.write('B\t' + s + '\n')
    print(len(drug_like), len(aromatic), len(aliphatic))


if __name__ == '__main__':
    main(sys.argv[1] if len(sys.argv) > 1 else 'data')
