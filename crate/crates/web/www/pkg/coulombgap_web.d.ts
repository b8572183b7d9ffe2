/* tslint:disable */
/* eslint-disable */

/**
 * Geometry summary; gap fields are NaN when the droplet has no gap.
 */
export class Summary {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    a: number;
    b: number;
    c: number;
    has_gap: boolean;
    outer_radius: number;
    r1: number;
    r2: number;
    rho: number;
    u: number;
}

/**
 * Droplet geometry of q(r) = Σ c_k r^{2k}.
 */
export function droplet_summary(coeffs: Float64Array): Summary;

/**
 * Flattened `(t, exact, predicted)` triples at `edge` = "r1" | "r2" | "outer".
 */
export function edge_profile(coeffs: Float64Array, n: number, edge: string, t_lo: number, t_hi: number, points: number): Float64Array;

/**
 * Flattened `(n, raw, residual)` triples for the r1 edge over `n_lo..=n_hi`.
 */
export function edge_series(coeffs: Float64Array, n_lo: number, n_hi: number, step: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_get_summary_a: (a: number) => number;
    readonly __wbg_get_summary_b: (a: number) => number;
    readonly __wbg_get_summary_c: (a: number) => number;
    readonly __wbg_get_summary_has_gap: (a: number) => number;
    readonly __wbg_get_summary_outer_radius: (a: number) => number;
    readonly __wbg_get_summary_r1: (a: number) => number;
    readonly __wbg_get_summary_r2: (a: number) => number;
    readonly __wbg_get_summary_rho: (a: number) => number;
    readonly __wbg_get_summary_u: (a: number) => number;
    readonly __wbg_set_summary_a: (a: number, b: number) => void;
    readonly __wbg_set_summary_b: (a: number, b: number) => void;
    readonly __wbg_set_summary_c: (a: number, b: number) => void;
    readonly __wbg_set_summary_has_gap: (a: number, b: number) => void;
    readonly __wbg_set_summary_outer_radius: (a: number, b: number) => void;
    readonly __wbg_set_summary_r1: (a: number, b: number) => void;
    readonly __wbg_set_summary_r2: (a: number, b: number) => void;
    readonly __wbg_set_summary_rho: (a: number, b: number) => void;
    readonly __wbg_set_summary_u: (a: number, b: number) => void;
    readonly __wbg_summary_free: (a: number, b: number) => void;
    readonly droplet_summary: (a: number, b: number) => [number, number, number];
    readonly edge_profile: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number, number];
    readonly edge_series: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
