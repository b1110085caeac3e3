/* tslint:disable */
/* eslint-disable */

export class Demo {
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Conductance of the current cluster, `NaN` before the first diffusion.
     */
    conductance(): number;
    /**
     * Push diffusion from `seed` followed by a sweep; returns the members.
     */
    diffuse(seed: number, alpha: number, eps: number): Uint32Array;
    /**
     * Interleaved endpoints, each edge once.
     */
    edges(): Uint32Array;
    /**
     * Improves the current cluster with `mqi`, `flowimprove` or `simplelocal`.
     */
    improve(method: string, delta: number): Uint32Array;
    m(): number;
    n(): number;
    /**
     * Best `(size, conductance)` per log-spaced size bin, flattened.
     */
    ncp(bins: number, seeds_per_bin: number, rng_seed: bigint): Float64Array;
    /**
     * Non-isolated vertex closest to `(x, y)`.
     */
    nearest(x: number, y: number): number;
    constructor(n: number, radius: number, rng_seed: bigint);
    /**
     * Interleaved `x, y` coordinates.
     */
    points(): Float64Array;
    /**
     * Conductance after the diffusion and after each improvement step.
     */
    trace(): Float64Array;
}

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_demo_free: (a: number, b: number) => void;
    readonly demo_conductance: (a: number) => number;
    readonly demo_diffuse: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly demo_edges: (a: number) => [number, number];
    readonly demo_improve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly demo_m: (a: number) => number;
    readonly demo_n: (a: number) => number;
    readonly demo_ncp: (a: number, b: number, c: number, d: bigint) => [number, number, number, number];
    readonly demo_nearest: (a: number, b: number, c: number) => number;
    readonly demo_new: (a: number, b: number, c: bigint) => [number, number, number];
    readonly demo_points: (a: number) => [number, number];
    readonly demo_trace: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
