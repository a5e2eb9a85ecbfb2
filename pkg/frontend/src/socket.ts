// Thin wrapper over the `/live` WebSocket with automatic reconnect.

import type { CommandEvent, ConsoleEvent } from "./types.js";

const RECONNECT_DELAY_MS = 1500;

export class LiveSocket {
  private ws: WebSocket | null = null;
  private closed = false;

  constructor(
    private url: string,
    private onEvent: (event: ConsoleEvent) => void,
    private onLinkChange: (up: boolean) => void,
  ) {}

  connect(): void {
    if (this.closed) return;
    const ws = new WebSocket(this.url);
    this.ws = ws;
    ws.onopen = () => this.onLinkChange(true);
    ws.onmessage = (msg) => {
      try {
        this.onEvent(JSON.parse(msg.data as string) as ConsoleEvent);
      } catch {
        // a malformed frame is dropped, never fatal
      }
    };
    ws.onclose = () => {
      this.onLinkChange(false);
      if (!this.closed) setTimeout(() => this.connect(), RECONNECT_DELAY_MS);
    };
    ws.onerror = () => ws.close();
  }

  send(event: CommandEvent): boolean {
    if (this.ws === null || this.ws.readyState !== WebSocket.OPEN) return false;
    this.ws.send(JSON.stringify(event));
    return true;
  }

  close(): void {
    this.closed = true;
    this.ws?.close();
  }
}
