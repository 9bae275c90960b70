// Session controller: ties the API client to the view model.  One in-flight
// request at a time; the pending flag doubles as the optimistic button lock.

import * as api from "./api.js";
import {
  applyView,
  newModel,
  requestFailed,
  requestStarted,
  TableViewModel,
} from "./state.js";

export type Listener = (vm: TableViewModel) => void;

export class TableController {
  vm: TableViewModel = newModel();
  private lastCommand: (() => Promise<void>) | null = null;

  constructor(
    private base: string,
    private listener: Listener,
  ) {}

  private emit(): void {
    this.listener(this.vm);
  }

  private async run(command: () => Promise<api.PublicState>): Promise<void> {
    if (this.vm.pending) {
      return; // double-click guard: exactly one action in flight
    }
    this.vm = requestStarted(this.vm);
    this.emit();
    try {
      const view = await command();
      this.vm = applyView(this.vm, view);
    } catch (err) {
      if (err instanceof api.ApiError && (err.status === 400 || err.status === 409)) {
        // Illegal/out-of-turn: refresh the authoritative state, re-enable.
        const message = `${err.code}: ${err.message}`;
        try {
          const sid = this.vm.view?.session;
          if (sid) {
            const view = await api.getState(this.base, sid);
            this.vm = applyView(this.vm, view);
          }
        } catch {
          // fall through to the plain error banner
        }
        this.vm = requestFailed(this.vm, message);
      } else {
        this.vm = requestFailed(this.vm, err instanceof Error ? err.message : String(err));
      }
    }
    this.emit();
  }

  async startGame(opts: api.SessionOptions): Promise<void> {
    const command = () => api.createSession(this.base, opts);
    this.lastCommand = () => this.run(command);
    await this.run(command);
  }

  async submitAction(kind: string): Promise<void> {
    const sid = this.vm.view?.session;
    if (!sid) {
      return;
    }
    const command = () => api.postAction(this.base, sid, kind);
    this.lastCommand = () => this.run(command);
    await this.run(command);
  }

  async refresh(): Promise<void> {
    const sid = this.vm.view?.session;
    if (!sid) {
      return;
    }
    await this.run(() => api.getState(this.base, sid));
  }

  async retry(): Promise<void> {
    if (this.lastCommand) {
      await this.lastCommand();
    }
  }
}
