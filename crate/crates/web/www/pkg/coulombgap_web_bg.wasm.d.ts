/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_get_summary_a: (a: number) => number;
export const __wbg_get_summary_b: (a: number) => number;
export const __wbg_get_summary_c: (a: number) => number;
export const __wbg_get_summary_has_gap: (a: number) => number;
export const __wbg_get_summary_outer_radius: (a: number) => number;
export const __wbg_get_summary_r1: (a: number) => number;
export const __wbg_get_summary_r2: (a: number) => number;
export const __wbg_get_summary_rho: (a: number) => number;
export const __wbg_get_summary_u: (a: number) => number;
export const __wbg_set_summary_a: (a: number, b: number) => void;
export const __wbg_set_summary_b: (a: number, b: number) => void;
export const __wbg_set_summary_c: (a: number, b: number) => void;
export const __wbg_set_summary_has_gap: (a: number, b: number) => void;
export const __wbg_set_summary_outer_radius: (a: number, b: number) => void;
export const __wbg_set_summary_r1: (a: number, b: number) => void;
export const __wbg_set_summary_r2: (a: number, b: number) => void;
export const __wbg_set_summary_rho: (a: number, b: number) => void;
export const __wbg_set_summary_u: (a: number, b: number) => void;
export const __wbg_summary_free: (a: number, b: number) => void;
export const droplet_summary: (a: number, b: number) => [number, number, number];
export const edge_profile: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number, number];
export const edge_series: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
