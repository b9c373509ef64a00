/* tslint:disable */
/* eslint-disable */

/**
 * ΔE(ĥ) = E(0°) − E(90°) on the same grid as [`energy_curve`].
 */
export function delta_e_curve(body: string, b_hat: number, pol: string, h_max: number, count: number): Float64Array;

/**
 * Reduced energy Ê(ĥ) at a fixed orientation, one value per height of
 * `heights(h_max, count)`.
 */
export function energy_curve(body: string, b_hat: number, pol: string, theta_deg: number, h_max: number, count: number): Float64Array;

/**
 * Height intervals with an outward force, flattened as `[lo, hi, …]`.
 */
export function repulsion(body: string, b_hat: number, pol: string, theta_deg: number, h_max: number): Float64Array;

/**
 * Heights at which the energy does not depend on orientation.
 */
export function torsion_free(body: string, b_hat: number, pol: string): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly delta_e_curve: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
    readonly energy_curve: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number, number];
    readonly repulsion: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
    readonly torsion_free: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
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
