"""X-chromosome-inclusive genetic association toolkit

Association studies including the X chromosome face eight analytical
considerations.  Each is handled as follows:

1. Quantitative traits vs. binary outcomes: the linear and logistic
   families (:mod:`xwas.family`, :mod:`xwas.stats.glm`).

2. Genotype-based vs. allele-based tests: all tests are
   regression-based on genotypes and remain valid away from
   Hardy-Weinberg equilibrium.  Equilibrium is reported only as a
   quality control statistic (:mod:`xwas.scan.qc`), and departures can
   be modelled in power calculations (:class:`xwas.stats.ncp.PopulationSpec`).

3. Additive vs. genotypic models: the ``additive`` and ``genotypic``
   autosome models (:mod:`xwas.genetics.design`), with the cost of the
   extra degree of freedom given by :mod:`xwas.stats.power` and
   :func:`xwas.stats.ncp.autosome_curves`.

4. Sex as a covariate: every model from ``M1`` onwards includes the
   sex main effect.  The confounding in ``M0`` is quantified by
   :func:`xwas.stats.ncp.ncp_misspecified` and simulated by
   :mod:`xwas.sim.harness`.

5. Gene-sex interaction: the ``GS`` covariate in ``M3`` and ``M4``.

6. X inactivation vs. no inactivation: the inactivation assumption of
   a :class:`xwas.genetics.genotype.CodingScheme`, with invariance
   checked by :func:`xwas.scan.runner.audit`.

7. Random vs. skewed inactivation: the dominance covariate ``G_D`` in
   ``M2`` and ``M4``, and :func:`xwas.stats.ncp.effective_additive`.

8. Choice of baseline allele: the risk allele (and male baseline) of a
   coding scheme, with equivalent designs identified by
   :func:`xwas.genetics.transform.find_transformation`.

``M4`` handles all eight and is the recommended model for X SNPs.
"""

from . import genetics
from . import stats
from . import sim
from . import scan
