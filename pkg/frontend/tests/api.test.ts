import { describe, expect, it } from "vitest";

import { ApiClient, CATEGORIES, ConflictError } from "../src/api.js";

interface Call {
  input: string;
  init?: RequestInit;
}

function clientWith(
  responder: (input: string, init?: RequestInit) => Response,
): { client: ApiClient; calls: Call[] } {
  const calls: Call[] = [];
  const client = new ApiClient("", (input, init) => {
    calls.push({ input, init });
    return Promise.resolve(responder(input, init));
  });
  return { client, calls };
}

function json(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), { status });
}

describe("category vocabulary", () => {
  it("is exactly the five wire values", () => {
    expect(CATEGORIES).toEqual([
      "good",
      "mostly_good",
      "mostly_bad",
      "bad",
      "trash",
    ]);
  });
});

describe("fetchTask", () => {
  it("parses a task and encodes the annotator id", async () => {
    const task = { pair_id: "ab12", phrase1: "Sit down.", phrase2: "Have a seat." };
    const { client, calls } = clientWith(() => json(200, task));
    expect(await client.fetchTask("ann a/1")).toEqual(task);
    expect(calls[0].input).toBe("/api/task?annotator=ann+a%2F1");
  });

  it("returns null on 204", async () => {
    const { client } = clientWith(() => new Response(null, { status: 204 }));
    expect(await client.fetchTask("ann-a")).toBeNull();
  });

  it("surfaces the server error message on 400", async () => {
    const { client } = clientWith(() => json(400, { error: "annotator required" }));
    await expect(client.fetchTask("")).rejects.toThrow("annotator required");
  });
});

describe("submitJudgment", () => {
  it("posts the exact wire body and returns stored", async () => {
    const { client, calls } = clientWith(() => json(200, { status: "ok", stored: true }));
    expect(await client.submitJudgment("ann-a", "ab12", "mostly_bad")).toBe(true);
    expect(calls[0].input).toBe("/api/judgment");
    expect(calls[0].init?.method).toBe("POST");
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({
      annotator: "ann-a",
      pair_id: "ab12",
      category: "mostly_bad",
    });
  });

  it("reports an already stored identical judgment as not stored", async () => {
    const { client } = clientWith(() => json(200, { status: "ok", stored: false }));
    expect(await client.submitJudgment("ann-a", "ab12", "good")).toBe(false);
  });

  it("raises ConflictError with the server message on 409", async () => {
    const { client } = clientWith(() =>
      json(409, { error: "pair ab12 already judged by 'ann-a' as good" }),
    );
    const attempt = client.submitJudgment("ann-a", "ab12", "bad");
    await expect(attempt).rejects.toBeInstanceOf(ConflictError);
    await expect(
      client.submitJudgment("ann-a", "ab12", "bad"),
    ).rejects.toThrow("already judged");
  });

  it("raises a plain error on other failures", async () => {
    const { client } = clientWith(() => new Response("gone", { status: 500 }));
    const attempt = client.submitJudgment("ann-a", "ab12", "good");
    await expect(attempt).rejects.toThrow("status 500");
    await expect(attempt).rejects.not.toBeInstanceOf(ConflictError);
  });
});

describe("fetchProgress", () => {
  it("parses the counters", async () => {
    const counts = { pairs: 10, unjudged: 4, partial: 3, complete: 3, judgments: 9 };
    const { client } = clientWith(() => json(200, counts));
    expect(await client.fetchProgress()).toEqual(counts);
  });
});
