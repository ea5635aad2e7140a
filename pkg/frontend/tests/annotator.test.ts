// @vitest-environment jsdom

import { beforeEach, describe, expect, it } from "vitest";

import { CATEGORIES, ConflictError } from "../src/api.js";
import { AnnotatorApp, createApp } from "../src/annotator.js";
import { FakeClient, deferred, pageBody, task } from "./helpers.js";

let client: FakeClient;
let app: AnnotatorApp;

function mount(): void {
  document.body.innerHTML = pageBody();
  sessionStorage.clear();
  client = new FakeClient();
  app = createApp(document, client, sessionStorage);
}

function press(key: string): void {
  document.dispatchEvent(new KeyboardEvent("keydown", { key, bubbles: true }));
}

function visible(id: string): boolean {
  const el = document.getElementById(id);
  return el !== null && !el.hidden;
}

function phraseText(): [string, string] {
  return [
    document.getElementById("phrase1")!.textContent ?? "",
    document.getElementById("phrase2")!.textContent ?? "",
  ];
}

beforeEach(mount);

describe("rendering", () => {
  it("shows both phrases verbatim", async () => {
    client.tasks = [
      { pair_id: "p1", phrase1: "Sit down.", phrase2: "Have a seat." },
    ];
    app.startJudging("ann-a");
    await app.whenIdle();
    expect(phraseText()).toEqual(["Sit down.", "Have a seat."]);
  });

  it("renders markup in phrases as text, never as elements", async () => {
    const wicked = 'a <b>bold</b> & <img src=x onerror="x()"> pair';
    client.tasks = [{ pair_id: "p1", phrase1: wicked, phrase2: "<i>two</i>" }];
    app.startJudging("ann-a");
    await app.whenIdle();
    expect(phraseText()).toEqual([wicked, "<i>two</i>"]);
    expect(document.querySelector("#phrase1 b")).toBeNull();
    expect(document.querySelector("#phrase1 img")).toBeNull();
    expect(document.querySelector("#phrase2 i")).toBeNull();
  });

  it("lays out the judgment buttons in fixed category order", () => {
    const order = Array.from(
      document.querySelectorAll("button.judge[data-category]"),
    ).map((b) => (b as HTMLElement).dataset.category);
    expect(order).toEqual([...CATEGORIES]);
  });

  it("shows the exhausted screen on an empty queue", async () => {
    client.tasks = [];
    app.startJudging("ann-a");
    await app.whenIdle();
    expect(visible("done")).toBe(true);
    expect(visible("judging")).toBe(false);
  });
});

describe("keyboard", () => {
  it("maps 1-4 and 0 onto the five categories", async () => {
    client.tasks = [1, 2, 3, 4, 5].map(task);
    app.startJudging("ann-a");
    for (const key of ["1", "2", "3", "4", "0"]) {
      await app.whenIdle();
      press(key);
    }
    await app.whenIdle();
    expect(client.submitted.map((s) => s.category)).toEqual([...CATEGORIES]);
    expect(visible("done")).toBe(true);
  });

  it("ignores shortcut keys while typing in a field", async () => {
    client.tasks = [task(1)];
    app.startJudging("ann-a");
    await app.whenIdle();
    const input = document.getElementById("annotator-input")!;
    input.dispatchEvent(new KeyboardEvent("keydown", { key: "1", bubbles: true }));
    await app.whenIdle();
    expect(client.submitted).toEqual([]);
  });

  it("submits the pair that was displayed, in order, under fast use", async () => {
    client.tasks = [task(1), task(2)];
    app.startJudging("ann-a");
    await app.whenIdle();
    press("1");
    press("4");
    await app.whenIdle();
    press("4");
    await app.whenIdle();
    expect(client.submitted).toEqual([
      { annotator: "ann-a", pairId: "pair-1", category: "good" },
      { annotator: "ann-a", pairId: "pair-2", category: "bad" },
    ]);
  });
});

describe("double submission", () => {
  it("drops repeated keypresses while a submit is in flight", async () => {
    client.tasks = [task(1), task(2)];
    const gate = deferred<boolean>();
    client.submitResult = () => gate.promise;
    app.startJudging("ann-a");
    await app.whenIdle();
    press("1");
    press("1");
    press("1");
    expect(client.submitted).toHaveLength(1);
    client.submitResult = () => Promise.resolve(true);
    gate.resolve(true);
    await app.whenIdle();
    expect(client.submitted).toHaveLength(1);
    expect(phraseText()[0]).toBe("left 2");
  });

  it("drops rapid button clicks while a submit is in flight", async () => {
    client.tasks = [task(1), task(2)];
    const gate = deferred<boolean>();
    client.submitResult = () => gate.promise;
    app.startJudging("ann-a");
    await app.whenIdle();
    const good = document.querySelector<HTMLButtonElement>(
      'button.judge[data-category="good"]',
    )!;
    for (let i = 0; i < 5; i++) good.click();
    expect(client.submitted).toHaveLength(1);
    gate.resolve(true);
    await app.whenIdle();
    expect(client.submitted).toHaveLength(1);
  });

  it("disables the buttons while a request is in flight", async () => {
    client.tasks = [task(1)];
    const gate = deferred<boolean>();
    client.submitResult = () => gate.promise;
    app.startJudging("ann-a");
    await app.whenIdle();
    const buttons = Array.from(
      document.querySelectorAll<HTMLButtonElement>("button.judge"),
    );
    expect(buttons.every((b) => !b.disabled)).toBe(true);
    press("1");
    expect(buttons.every((b) => b.disabled)).toBe(true);
    gate.resolve(true);
    await app.whenIdle();
  });
});

describe("failure handling", () => {
  it("shows the conflict and refetches on 409", async () => {
    client.tasks = [task(1), task(2)];
    client.submitResult = () => {
      client.submitResult = () => Promise.resolve(true);
      return Promise.reject(new ConflictError("pair pair-1 already judged"));
    };
    app.startJudging("ann-a");
    await app.whenIdle();
    press("1");
    await app.whenIdle();
    expect(visible("banner")).toBe(true);
    expect(document.getElementById("banner-text")!.textContent).toContain(
      "already judged",
    );
    expect(document.getElementById("banner-retry")!.hidden).toBe(true);
    expect(phraseText()[0]).toBe("left 2");
  });

  it("keeps the pair and offers retry when the network fails", async () => {
    client.tasks = [task(1), task(2)];
    client.submitResult = () => Promise.reject(new TypeError("fetch failed"));
    app.startJudging("ann-a");
    await app.whenIdle();
    press("3");
    await app.whenIdle();
    expect(visible("banner")).toBe(true);
    expect(document.getElementById("banner-retry")!.hidden).toBe(false);
    expect(phraseText()[0]).toBe("left 1");
    expect(client.submitted).toHaveLength(1);

    client.submitResult = () => Promise.resolve(true);
    document.getElementById("banner-retry")!.click();
    await app.whenIdle();
    expect(client.submitted).toHaveLength(2);
    expect(client.submitted[1]).toEqual({
      annotator: "ann-a",
      pairId: "pair-1",
      category: "mostly_bad",
    });
    expect(phraseText()[0]).toBe("left 2");
    expect(visible("banner")).toBe(false);
  });

  it("refreshes the progress line after every submission", async () => {
    client.tasks = [task(1), task(2)];
    client.progress = { pairs: 9, unjudged: 5, partial: 2, complete: 2, judgments: 6 };
    app.startJudging("ann-a");
    await app.whenIdle();
    const initial = client.progressCalls;
    press("1");
    await app.whenIdle();
    expect(client.progressCalls).toBe(initial + 1);
    expect(document.getElementById("progress")!.textContent).toBe(
      "2 of 9 pairs complete, 6 judgments stored",
    );
  });
});

describe("login", () => {
  it("stores the entered id and starts judging", async () => {
    client.tasks = [task(1)];
    app.init();
    expect(visible("login")).toBe(true);
    const input = document.getElementById("annotator-input") as HTMLInputElement;
    input.value = "  ann-web ";
    document
      .getElementById("login-form")!
      .dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
    await app.whenIdle();
    expect(sessionStorage.getItem("paramine.annotator")).toBe("ann-web");
    expect(visible("login")).toBe(false);
    expect(phraseText()[0]).toBe("left 1");
  });

  it("resumes a stored session without the form", async () => {
    sessionStorage.setItem("paramine.annotator", "ann-back");
    client.tasks = [task(7)];
    app.init();
    await app.whenIdle();
    expect(visible("login")).toBe(false);
    expect(client.submitted).toEqual([]);
    press("1");
    await app.whenIdle();
    expect(client.submitted[0].annotator).toBe("ann-back");
  });
});
