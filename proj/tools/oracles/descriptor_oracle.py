"""Print reference descriptor and QED values from RDKit as C++ initializers.

The output is pasted into tests/test_descriptors.cpp. RDKit is only an
offline oracle; the library does not link against it.
"""
import random
import sys

from rdkit import Chem
from rdkit.Chem import QED, Crippen, Descriptors, Lipinski, rdMolDescriptors

DRUGS = [
    ("aspirin", "CC(=O)Oc1ccccc1C(=O)O"),
    ("caffeine", "Cn1c(=O)c2c(ncn2C)n(C)c1=O"),
    ("ibuprofen", "CC(C)Cc1ccc(C(C)C(=O)O)cc1"),
    ("paracetamol", "CC(=O)Nc1ccc(O)cc1"),
    ("nicotine", "CN1CCC[C@H]1c1cccnc1"),
    ("melatonin", "COc1ccc2[nH]cc(CCNC(C)=O)c2c1"),
    ("isoproterenol", "CC(C)NCC(O)c1ccc(O)c(O)c1"),
    ("clotrimazole_like", "Clc1ccc(C(c2ccccc2)n2ccnc2)cc1"),
    ("diclofenac", "O=C(O)Cc1ccccc1Nc1c(Cl)cccc1Cl"),
    ("diazepam", "CN1C(=O)CN=C(c2ccccc2)c2cc(Cl)ccc21"),
]


def descriptor_rows():
    print("// name, smiles, mw, logp, tpsa, hbd, hba, arom, alerts, rotb, rdkit qed")
    for name, smi in DRUGS:
        m = Chem.MolFromSmiles(smi)
        p = QED.properties(m)
        print('  { "%s", "%s", %.6f, %.6f, %.6f, %d, %d, %d, %d, %d, %.6f },' % (
            name, smi, Descriptors.MolWt(m), Crippen.MolLogP(m),
            rdMolDescriptors.CalcTPSA(m), Lipinski.NumHDonors(m),
            Lipinski.NOCount(m), p.AROM, p.ALERTS, p.ROTB, QED.qed(m)))


def qed_property_rows(n=40, seed=3):
    # QED from arbitrary descriptor tuples, through RDKit's qedProperties hook.
    # Inputs are rounded to the printed precision before scoring.
    rng = random.Random(seed)
    m = Chem.MolFromSmiles("C")
    print("// mw, alogp, hba, hbd, psa, rotb, arom, alerts, qed")
    for _ in range(n):
        p = QED.QEDproperties(
            MW=round(rng.uniform(50, 800), 6), ALOGP=round(rng.uniform(-4, 9), 6),
            HBA=rng.randint(0, 14), HBD=rng.randint(0, 8),
            PSA=round(rng.uniform(0, 200), 6), ROTB=rng.randint(0, 16),
            AROM=rng.randint(0, 6), ALERTS=rng.randint(0, 4))
        print("  { %.6f, %.6f, %d, %d, %.6f, %d, %d, %d, %.12f }," % (
            p.MW, p.ALOGP, p.HBA, p.HBD, p.PSA, p.ROTB, p.AROM, p.ALERTS,
            QED.qed(m, qedProperties=p)))


if __name__ == "__main__":
    which = sys.argv[1] if len(sys.argv) > 1 else "all"
    if which in ("all", "descriptors"):
        descriptor_rows()
    if which in ("all", "qed"):
        qed_property_rows()
