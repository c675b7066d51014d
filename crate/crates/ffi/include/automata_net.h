#ifndef AUTOMATA_NET_H
#define AUTOMATA_NET_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AnBackend {
  AN_BACKEND_AND_OR = 0,
  AN_BACKEND_BOOTSTRAP = 1,
} AnBackend;

typedef enum AnObservation {
  AN_OBSERVATION_BLOCK = 0,
  AN_OBSERVATION_PERIOD = 1,
} AnObservation;

typedef enum AnRule {
  AN_RULE_BOOTSTRAP = 0,
  AN_RULE_MAJORITY = 1,
  AN_RULE_AND = 2,
  AN_RULE_OR = 3,
} AnRule;

typedef enum AnScheduleCase {
  AN_SCHEDULE_CASE_LONG_WORD = 0,
  AN_SCHEDULE_CASE_NC_CONDITION = 1,
  AN_SCHEDULE_CASE_INTERLEAVED = 2,
} AnScheduleCase;

typedef enum AnStatus {
  AN_STATUS_OK = 0,
  AN_STATUS_NULL_POINTER = 1,
  AN_STATUS_INVALID_ARGUMENT = 2,
  AN_STATUS_PARSE = 3,
  AN_STATUS_BOUND_EXCEEDED = 4,
  AN_STATUS_PANIC = 5,
} AnStatus;

/**
 * Opaque circuit handle.
 */
typedef struct AnCircuit AnCircuit;

/**
 * Opaque network handle.
 */
typedef struct AnNetwork AnNetwork;

/**
 * Opaque schedule handle.
 */
typedef struct AnSchedule AnSchedule;

/**
 * Answer of [`an_decide_per`]. `period` and `block` are meaningful only
 * when `reachable` is true.
 */
typedef struct AnPerResult {
  bool reachable;
  size_t period;
  size_t block;
} AnPerResult;

typedef struct AnVerifyResult {
  size_t assignments_tested;
  size_t mismatches;
  size_t vertices;
  size_t max_degree;
} AnVerifyResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *an_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *an_version(void);

/**
 * Builds a network on `n` vertices. `edges` holds `2 * edge_count` vertex
 * ids (pairs `u, v`); `rules` holds `n` [`AnRule`] codes.
 *
 * # Safety
 * `edges` and `rules` must point to readable arrays of the stated lengths;
 * `out` must be writable.
 */
enum AnStatus an_network_new(size_t n,
                             const size_t *edges,
                             size_t edge_count,
                             const uint8_t *rules,
                             struct AnNetwork **out);

/**
 * # Safety
 * `net` must be null or a handle from [`an_network_new`] not yet freed.
 */
void an_network_free(struct AnNetwork *net);

/**
 * Vertex count, or 0 for a null handle.
 *
 * # Safety
 * `net` must be null or a live network handle.
 */
size_t an_network_size(const struct AnNetwork *net);

/**
 * # Safety
 * `out` must be writable.
 */
enum AnStatus an_schedule_parallel(size_t n, struct AnSchedule **out);

/**
 * One singleton block per vertex in the order given (a permutation).
 *
 * # Safety
 * `order` must point to `n` readable ids; `out` must be writable.
 */
enum AnStatus an_schedule_sequential(const size_t *order, size_t n, struct AnSchedule **out);

/**
 * General block word over `n` vertices: `vertices` concatenates the blocks,
 * whose sizes are given by `block_sizes[0..block_count]`.
 *
 * # Safety
 * `vertices` must hold the sum of `block_sizes` ids; `out` must be writable.
 */
enum AnStatus an_schedule_blocks(size_t n,
                                 const size_t *vertices,
                                 const size_t *block_sizes,
                                 size_t block_count,
                                 struct AnSchedule **out);

/**
 * Parses the schedule text format for `n` vertices.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum AnStatus an_schedule_parse(const char *text, size_t n, struct AnSchedule **out);

/**
 * # Safety
 * `s` must be null or a schedule handle not yet freed.
 */
void an_schedule_free(struct AnSchedule *s);

/**
 * Decides whether `target` is ever active. `max_periods == 0` selects the
 * default bound.
 *
 * # Safety
 * Handles must be live; `initial` must point to `n` bytes; `out` must be
 * writable.
 */
enum AnStatus an_decide_per(const struct AnNetwork *net,
                            const struct AnSchedule *schedule,
                            const uint8_t *initial,
                            size_t target,
                            enum AnObservation observe,
                            size_t max_periods,
                            bool enforce_or_only,
                            struct AnPerResult *out);

/**
 * Bootstrap closure of `initial` on the network's graph (rules ignored),
 * written as `n` bytes to `out`.
 *
 * # Safety
 * `initial` and `out` must each point to `n` bytes.
 */
enum AnStatus an_bootstrap_closure(const struct AnNetwork *net,
                                   const uint8_t *initial,
                                   uint8_t *out);

/**
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum AnStatus an_classify_schedule(const struct AnNetwork *net,
                                   const struct AnSchedule *schedule,
                                   enum AnScheduleCase *out);

/**
 * Parses a circuit netlist.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum AnStatus an_circuit_parse(const char *text, struct AnCircuit **out);

/**
 * # Safety
 * `c` must be null or a circuit handle not yet freed.
 */
void an_circuit_free(struct AnCircuit *c);

/**
 * Number of circuit inputs, or 0 for a null handle.
 *
 * # Safety
 * `c` must be null or a live circuit handle.
 */
size_t an_circuit_input_count(const struct AnCircuit *c);

/**
 * Compiles the circuit and checks every input assignment.
 *
 * # Safety
 * `c` must be live; `out` must be writable.
 */
enum AnStatus an_verify_reduction(const struct AnCircuit *c,
                                  enum AnBackend backend,
                                  size_t exhaustion_bound,
                                  struct AnVerifyResult *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AUTOMATA_NET_H */
