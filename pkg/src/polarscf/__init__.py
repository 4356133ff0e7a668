"""polarscf: finite Fock-space algebra, log-mesh atomic SCF with nonlocal
exchange, frozen-core pseudopotential construction, quasiparticle Green
functions, and the quasirelativistic boson energy series, with the
`polar-scf` command-line front end."""

__version__ = "0.1.0"
