import { spawn, type ChildProcess } from "node:child_process";
import { readFileSync } from "node:fs";
import { join } from "node:path";

import type { AnnotationClient, Category, Progress, Task } from "../src/api.js";

// Resolved from the package root; import.meta.url is not a file URL under jsdom.
const INDEX_HTML = join(process.cwd(), "index.html");

/** Body markup of the real page, for mounting into a test document. */
export function pageBody(): string {
  const html = readFileSync(INDEX_HTML, "utf8");
  const match = html.match(/<body>([\s\S]*)<\/body>/);
  if (!match) throw new Error("index.html has no body");
  return match[1];
}

export function deferred<T>(): {
  promise: Promise<T>;
  resolve: (value: T) => void;
  reject: (reason: unknown) => void;
} {
  let resolve!: (value: T) => void;
  let reject!: (reason: unknown) => void;
  const promise = new Promise<T>((res, rej) => {
    resolve = res;
    reject = rej;
  });
  return { promise, resolve, reject };
}

export interface Submission {
  annotator: string;
  pairId: string;
  category: Category;
}

/** Scriptable stand-in for the HTTP client. */
export class FakeClient implements AnnotationClient {
  tasks: (Task | null)[] = [];
  submitted: Submission[] = [];
  submitResult: () => Promise<boolean> = () => Promise.resolve(true);
  progress: Progress = { pairs: 0, unjudged: 0, partial: 0, complete: 0, judgments: 0 };
  progressCalls = 0;

  fetchTask(): Promise<Task | null> {
    return Promise.resolve(this.tasks.length > 0 ? this.tasks.shift()! : null);
  }

  submitJudgment(
    annotator: string,
    pairId: string,
    category: Category,
  ): Promise<boolean> {
    this.submitted.push({ annotator, pairId, category });
    return this.submitResult();
  }

  fetchProgress(): Promise<Progress> {
    this.progressCalls += 1;
    return Promise.resolve(this.progress);
  }
}

export function task(n: number): Task {
  return { pair_id: `pair-${n}`, phrase1: `left ${n}`, phrase2: `right ${n}` };
}

export interface Service {
  proc: ChildProcess;
  base: string;
  stop(): Promise<void>;
}

/** Spawn the real annotation service and wait for its banner. */
export function startService(queue: string, store: string): Promise<Service> {
  const proc = spawn(
    "python3",
    ["-m", "paramine.cli", "serve", "--queue", queue, "--store", store, "--port", "0"],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  let output = "";
  return new Promise((resolve, reject) => {
    const timer = setTimeout(() => {
      proc.kill("SIGKILL");
      reject(new Error(`service did not start in time: ${output}`));
    }, 15_000);
    const scan = (chunk: Buffer) => {
      output += chunk.toString();
      const match = output.match(/serving \d+ pairs on (http:\/\/[0-9.]+:\d+)\//);
      if (match) {
        clearTimeout(timer);
        resolve({
          proc,
          base: match[1],
          stop: () =>
            new Promise<void>((done) => {
              proc.once("exit", () => done());
              proc.kill("SIGINT");
              setTimeout(() => proc.kill("SIGKILL"), 5_000).unref();
            }),
        });
      }
    };
    proc.stdout!.on("data", scan);
    proc.stderr!.on("data", scan);
    proc.once("exit", (code) => {
      clearTimeout(timer);
      reject(new Error(`service exited early (${code}): ${output}`));
    });
  });
}

export interface StoredJudgment {
  annotator_id: string;
  pair_id: string;
  category: string;
  ts: number;
}

/** Parse the service's JSONL store file. */
export function storedJudgments(store: string): StoredJudgment[] {
  let text: string;
  try {
    text = readFileSync(store, "utf8");
  } catch {
    return [];
  }
  const trimmed = text.trim();
  if (trimmed === "") return [];
  return trimmed.split("\n").map((line) => JSON.parse(line) as StoredJudgment);
}
