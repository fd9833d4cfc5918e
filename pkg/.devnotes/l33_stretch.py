import time
from random import Random
from lsl import *
from lsl.modules import default_seeds

t0 = time.time()
def el(msg):
    print('[%8.1fs] %s' % (time.time() - t0, msg), flush=True)

g = catalog_group('L3_3'); t = enumerate_group(g); f = GF(2)
el(f'order {t.order}')
rng = Random(0)
reg = simples(t, f, default_seeds(t, f, rng), rng, tensor_rounds=2)
el(f'simples {[s.dim for s in reg.simples]}')
pims = decompose_projectives(t, f, reg, rng)
el(f'pims {[(i, p.dim) for i, p in pims]}')
r = squeezed_resolution(reg, pims, rng, max_steps=12)
el(f'status {r.status}')
el(f'P dims {[tm.dim for tm in r.terms]}')
el(f'labels {[tm.labels for tm in r.terms]}')
el(f'N dims {[s.module.dim for s in r.syzygies]}')
el(f'M dims {[c.module.dim for c in r.cores]}')
h = squeezed_homology(r)
el(f'H {h.values}')
scan = detect_periodicity(r, 6)
c = scan.certificate
el(f'cert {(c.offset, c.period, c.verified_pairs) if c else None} unknowns {scan.unknown_pairs}')
