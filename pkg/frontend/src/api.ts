/** Thin typed client for the annotation service HTTP API. */

export const CATEGORIES = [
  "good",
  "mostly_good",
  "mostly_bad",
  "bad",
  "trash",
] as const;

export type Category = (typeof CATEGORIES)[number];

export interface Task {
  pair_id: string;
  phrase1: string;
  phrase2: string;
}

export interface Progress {
  pairs: number;
  unjudged: number;
  partial: number;
  complete: number;
  judgments: number;
}

/** 409 from the server: the pair already carries a different judgment. */
export class ConflictError extends Error {}

/** What the UI needs from the service; ApiClient is the HTTP implementation. */
export interface AnnotationClient {
  fetchTask(annotator: string): Promise<Task | null>;
  submitJudgment(
    annotator: string,
    pairId: string,
    category: Category,
  ): Promise<boolean>;
  fetchProgress(): Promise<Progress>;
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function errorText(res: Response): Promise<string> {
  try {
    const body = (await res.json()) as { error?: string };
    if (body.error) return body.error;
  } catch {
    // non-JSON error body, fall through to the status line
  }
  return `request failed with status ${res.status}`;
}

export class ApiClient implements AnnotationClient {
  private fetchImpl: FetchLike;

  constructor(
    private baseUrl = "",
    fetchImpl?: FetchLike,
  ) {
    // late binding so a browser's window.fetch keeps its required `this`
    this.fetchImpl = fetchImpl ?? ((input, init) => globalThis.fetch(input, init));
  }

  /** Next unjudged pair for this annotator, or null when the queue is done. */
  async fetchTask(annotator: string): Promise<Task | null> {
    const params = new URLSearchParams({ annotator });
    const res = await this.fetchImpl(`${this.baseUrl}/api/task?${params}`);
    if (res.status === 204) return null;
    if (!res.ok) throw new Error(await errorText(res));
    return (await res.json()) as Task;
  }

  /**
   * Store one judgment. Returns whether the server stored a new record;
   * false means this exact judgment was already on file.
   */
  async submitJudgment(
    annotator: string,
    pairId: string,
    category: Category,
  ): Promise<boolean> {
    const res = await this.fetchImpl(`${this.baseUrl}/api/judgment`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ annotator, pair_id: pairId, category }),
    });
    if (res.status === 409) throw new ConflictError(await errorText(res));
    if (!res.ok) throw new Error(await errorText(res));
    const body = (await res.json()) as { stored: boolean };
    return body.stored;
  }

  async fetchProgress(): Promise<Progress> {
    const res = await this.fetchImpl(`${this.baseUrl}/api/progress`);
    if (!res.ok) throw new Error(await errorText(res));
    return (await res.json()) as Progress;
  }
}
