"""Free-fermion spectrum cross-check for every encoding that fits the dense oracle."""
from flowtrotter.encodings import (ONE_D_VARIANTS, encode_1d_variant, gse_encode, jw_encode, kw_dual_encode,
                                   vc_encode)
from flowtrotter.exact import free_fermion_spectrum_check
from flowtrotter.lattice import Lattice


def main():
    encs = [jw_encode(6), jw_encode(5, "periodic"), vc_encode(Lattice(2, 2)), gse_encode(Lattice(2, 2)),
            kw_dual_encode(6)]
    encs += [encode_1d_variant(c, 4, "periodic" if c.value == "Toric4Edge" else "open") for c in ONE_D_VARIANTS]
    for enc in encs:
        rep = free_fermion_spectrum_check(enc)
        sectors = ", ".join(f"{s['parity']}: dim {s['dim']} x{s.get('multiplicity')} err {s.get('max_error', 0):.1e}"
                            for s in rep["sectors"])
        print(f"{'ok  ' if rep['ok'] else 'FAIL'} {enc.name.value:<20} {str(enc.lattice):<12} "
              f"{enc.n_qubits:>2} qubits, {len(rep['gauge_generators'])} loop relations; {sectors}")


if __name__ == "__main__":
    main()
