/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_demo_free: (a: number, b: number) => void;
export const demo_conductance: (a: number) => number;
export const demo_diffuse: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const demo_edges: (a: number) => [number, number];
export const demo_improve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const demo_m: (a: number) => number;
export const demo_n: (a: number) => number;
export const demo_ncp: (a: number, b: number, c: number, d: bigint) => [number, number, number, number];
export const demo_nearest: (a: number, b: number, c: number) => number;
export const demo_new: (a: number, b: number, c: bigint) => [number, number, number];
export const demo_points: (a: number) => [number, number];
export const demo_trace: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
