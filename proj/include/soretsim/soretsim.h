/* soretsim C API: hard-core hopping-fluid simulator.
 *
 * All functions return soretsim_status; SORETSIM_OK is 0. Out-parameters are
 * written only on success. Handles are opaque and freed with the matching
 * *_free function (safe on NULL). The last failure message of the calling
 * thread is available via soretsim_last_error().
 */
#ifndef SORETSIM_H
#define SORETSIM_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum soretsim_status {
    SORETSIM_OK = 0,
    SORETSIM_ERR_INVALID_ARGUMENT,
    SORETSIM_ERR_INVALID_RATES,
    SORETSIM_ERR_INVALID_STATE,
    SORETSIM_ERR_EMPTY_OR_COLD_SITE,
    SORETSIM_ERR_STEP_TOO_LARGE,
    SORETSIM_ERR_TOO_LARGE,
    SORETSIM_ERR_UNSTABLE_STEP,
    SORETSIM_ERR_BOUNDS_VIOLATED,
    SORETSIM_ERR_SINGULAR_FORCE,
    SORETSIM_ERR_SINGULAR_COORD,
    SORETSIM_ERR_CONVERGENCE_FAILURE,
    SORETSIM_ERR_CONSERVATION_VIOLATED,
    SORETSIM_ERR_ENTROPY_DECREASED,
    SORETSIM_ERR_ORACLE_MISMATCH,
    SORETSIM_ERR_CONFIG_INVALID,
    SORETSIM_ERR_IO,
    SORETSIM_ERR_INTERNAL
} soretsim_status;

const char* soretsim_status_name(soretsim_status status);
/* Thread-local message describing the most recent failure ("" if none). */
const char* soretsim_last_error(void);
/* CLI exit code for a status (0 for SORETSIM_OK). */
int soretsim_exit_code(soretsim_status status);

/* ------------------------------------------------------------------ */
/* Discrete lattice model                                              */
/* ------------------------------------------------------------------ */

typedef struct soretsim_lattice soretsim_lattice;
typedef struct soretsim_state soretsim_state;

/* Creates a lattice; `potential` holds num_sites site energies or is NULL
 * for a flat potential. Bond differences are quantized to integer multiples
 * of energy_quantum. Requires 2*hop_rate*energy_quantum <= 1/2. */
soretsim_status soretsim_lattice_create(int num_sites, double spacing,
                                        double energy_quantum, double hop_rate,
                                        const double* potential,
                                        soretsim_lattice** out);
void soretsim_lattice_free(soretsim_lattice* lattice);

int soretsim_lattice_num_sites(const soretsim_lattice* lattice);
int soretsim_lattice_k_max(const soretsim_lattice* lattice);
double soretsim_lattice_quantization_error(const soretsim_lattice* lattice);
/* Copies the quantized site potential into `out` (num_sites doubles). */
soretsim_status soretsim_lattice_potential(const soretsim_lattice* lattice, double* out);

/* State from per-site occupation means (in [0,1]) and kinetic-energy means. */
soretsim_status soretsim_state_create(const soretsim_lattice* lattice, const double* n,
                                      const double* kinetic, soretsim_state** out);
/* State from occupations and temperatures (kinetic energy via the
 * grand-canonical closure). */
soretsim_status soretsim_state_from_profiles(const soretsim_lattice* lattice,
                                             const double* occupation,
                                             const double* temperature,
                                             soretsim_state** out);
void soretsim_state_free(soretsim_state* state);

/* Copies the state; any output pointer may be NULL. Temperatures are the
 * per-site closure values (0 on empty or frozen sites). */
soretsim_status soretsim_state_get(const soretsim_state* state, double* n,
                                   double* kinetic, double* theta);

#define SORETSIM_SUM_FINITE 0
#define SORETSIM_SUM_INFINITE 1

/* Advances the state by one step (dt = spacing^2). With nonnull flux output
 * arrays (num_sites-1 entries) records the net rightward particle and energy
 * transfer per bond. */
soretsim_status soretsim_state_step(soretsim_state* state, const soretsim_lattice* lattice,
                                    int sum_mode, double* bond_particle_flux,
                                    double* bond_energy_flux);

soretsim_status soretsim_state_totals(const soretsim_state* state,
                                      const soretsim_lattice* lattice, double* particles,
                                      double* energy);
soretsim_status soretsim_state_entropy(const soretsim_state* state,
                                       const soretsim_lattice* lattice, double* entropy);

/* Brute-force cross-check of one mean-field step against the exact
 * transition matrix on the enumerated sample space (small lattices only;
 * pass k_cap < 0 to use the lattice k_max). */
soretsim_status soretsim_oracle_check(const soretsim_state* state,
                                      const soretsim_lattice* lattice, int k_cap,
                                      double* max_error);

/* ------------------------------------------------------------------ */
/* Continuum model                                                     */
/* ------------------------------------------------------------------ */

typedef struct soretsim_continuum soretsim_continuum;

soretsim_status soretsim_continuum_create(int cells, double length, double rho_max,
                                          const double* rho, const double* theta,
                                          const double* potential,
                                          soretsim_continuum** out);
void soretsim_continuum_free(soretsim_continuum* state);

/* One conservative explicit step. dt <= 0 selects the stability-bounded
 * default; the step actually taken is written to dt_used when nonnull. */
soretsim_status soretsim_continuum_step(soretsim_continuum* state, double hop_rate,
                                        double dt, double* dt_used);
/* Face-centered currents; each array takes cells+1 doubles, any may be NULL. */
soretsim_status soretsim_continuum_currents(const soretsim_continuum* state,
                                            double hop_rate, double* j_c, double* j_gamma,
                                            double* j_e);
soretsim_status soretsim_continuum_get(const soretsim_continuum* state, double* rho,
                                       double* theta, double* time);
soretsim_status soretsim_continuum_entropy(const soretsim_continuum* state,
                                           double* entropy);
soretsim_status soretsim_continuum_mass_energy(const soretsim_continuum* state,
                                               double* mass, double* energy);

/* ------------------------------------------------------------------ */
/* Config-driven runs (the CLI entry point)                            */
/* ------------------------------------------------------------------ */

/* Loads a key = value config file, runs the configured mode and writes all
 * artifacts. out_dir and mode may be NULL (config values apply); a relative
 * output directory is placed under $SORETSIM_OUT_ROOT when set. On failure
 * the output directory keeps the INCOMPLETE sentinel and the manifest
 * records the error category. */
soretsim_status soretsim_run_file(const char* config_path, const char* out_dir,
                                  const char* mode);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SORETSIM_H */
