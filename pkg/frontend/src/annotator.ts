/**
 * Judge-next loop controller: one pair on screen, five judgment actions,
 * one in-flight request at a time.
 */

import { AnnotationClient, Category, ConflictError, Task } from "./api.js";

export const KEY_BINDINGS: Record<string, Category> = {
  "1": "good",
  "2": "mostly_good",
  "3": "mostly_bad",
  "4": "bad",
  "0": "trash",
};

const STORAGE_KEY = "paramine.annotator";
const TYPING_TAGS = new Set(["INPUT", "TEXTAREA", "SELECT"]);

export interface Elements {
  login: HTMLElement;
  loginForm: HTMLFormElement;
  annotatorInput: HTMLInputElement;
  judging: HTMLElement;
  phrase1: HTMLElement;
  phrase2: HTMLElement;
  judgeButtons: HTMLButtonElement[];
  banner: HTMLElement;
  bannerText: HTMLElement;
  bannerRetry: HTMLButtonElement;
  progress: HTMLElement;
  done: HTMLElement;
}

export function collectElements(doc: Document): Elements {
  const byId = (id: string): HTMLElement => {
    const el = doc.getElementById(id);
    if (!el) throw new Error(`missing element #${id}`);
    return el;
  };
  return {
    login: byId("login"),
    loginForm: byId("login-form") as HTMLFormElement,
    annotatorInput: byId("annotator-input") as HTMLInputElement,
    judging: byId("judging"),
    phrase1: byId("phrase1"),
    phrase2: byId("phrase2"),
    judgeButtons: Array.from(
      doc.querySelectorAll<HTMLButtonElement>("button.judge[data-category]"),
    ),
    banner: byId("banner"),
    bannerText: byId("banner-text"),
    bannerRetry: byId("banner-retry") as HTMLButtonElement,
    progress: byId("progress"),
    done: byId("done"),
  };
}

export class AnnotatorApp {
  private annotator = "";
  private task: Task | null = null;
  private busy = false;
  private retryAction: (() => void) | null = null;

  constructor(
    private client: AnnotationClient,
    private els: Elements,
    private storage: Storage,
  ) {}

  /** Show the login form, or resume a session stored earlier. */
  init(): void {
    let saved: string | null = null;
    try {
      saved = this.storage.getItem(STORAGE_KEY);
    } catch {
      // storage blocked, fall back to the form
    }
    if (saved) {
      this.startJudging(saved);
    } else {
      this.els.login.hidden = false;
      this.els.annotatorInput.focus();
    }
  }

  startJudging(annotator: string): void {
    this.annotator = annotator;
    try {
      this.storage.setItem(STORAGE_KEY, annotator);
    } catch {
      // session just won't survive a reload
    }
    this.els.login.hidden = true;
    this.els.judging.hidden = false;
    void this.advance();
  }

  currentTask(): Task | null {
    return this.task;
  }

  /** Resolves once no request is in flight; the view is stable then. */
  async whenIdle(): Promise<void> {
    while (this.busy) {
      await new Promise((resolve) => setTimeout(resolve, 4));
    }
  }

  handleKeydown(event: KeyboardEvent): void {
    const target = event.target as HTMLElement | null;
    if (target && (TYPING_TAGS.has(target.tagName) || target.isContentEditable)) {
      return;
    }
    const category = KEY_BINDINGS[event.key];
    if (category) {
      event.preventDefault();
      void this.judge(category);
    }
  }

  /**
   * Submit a judgment for the pair on screen and advance. Does nothing
   * while a request is in flight, so repeated activation cannot double
   * submit; the POST always carries the pair that was displayed.
   */
  async judge(category: Category): Promise<void> {
    if (this.busy || !this.task) return;
    const judged = this.task;
    this.busy = true;
    this.setButtonsEnabled(false);
    this.hideBanner();
    try {
      await this.client.submitJudgment(this.annotator, judged.pair_id, category);
    } catch (exc) {
      if (exc instanceof ConflictError) {
        // someone else's judgment landed first; surface it and move on
        this.showBanner(exc.message);
      } else {
        this.showBanner(describe(exc), () => void this.judge(category));
        this.busy = false;
        this.setButtonsEnabled(true);
        return;
      }
    }
    await this.fetchNext();
    this.busy = false;
  }

  /** Pull progress and the next task; keeps the current view on failure. */
  private async advance(): Promise<void> {
    if (this.busy) return;
    this.busy = true;
    await this.fetchNext();
    this.busy = false;
  }

  private async fetchNext(): Promise<void> {
    await this.refreshProgress();
    let task: Task | null;
    try {
      task = await this.client.fetchTask(this.annotator);
    } catch (exc) {
      this.showBanner(describe(exc), () => void this.advance());
      return;
    }
    this.task = task;
    if (task === null) {
      this.els.judging.hidden = true;
      this.els.done.hidden = false;
      return;
    }
    this.els.phrase1.textContent = task.phrase1;
    this.els.phrase2.textContent = task.phrase2;
    this.els.done.hidden = true;
    this.els.judging.hidden = false;
    this.setButtonsEnabled(true);
  }

  private async refreshProgress(): Promise<void> {
    try {
      const p = await this.client.fetchProgress();
      this.els.progress.textContent =
        `${p.complete} of ${p.pairs} pairs complete, ` +
        `${p.judgments} judgments stored`;
    } catch {
      // stale counter beats a broken loop
    }
  }

  retryPending(): void {
    const action = this.retryAction;
    this.hideBanner();
    if (action) action();
  }

  private showBanner(message: string, retry?: () => void): void {
    this.els.bannerText.textContent = message;
    this.els.banner.hidden = false;
    this.retryAction = retry ?? null;
    this.els.bannerRetry.hidden = !retry;
  }

  private hideBanner(): void {
    this.els.banner.hidden = true;
    this.els.bannerRetry.hidden = true;
    this.retryAction = null;
  }

  private setButtonsEnabled(enabled: boolean): void {
    for (const button of this.els.judgeButtons) {
      button.disabled = !enabled;
    }
  }
}

function describe(exc: unknown): string {
  const detail = exc instanceof Error ? exc.message : String(exc);
  return `could not reach the server: ${detail}`;
}

/** Wire DOM events and return the ready app. */
export function createApp(
  doc: Document,
  client: AnnotationClient,
  storage: Storage,
): AnnotatorApp {
  const els = collectElements(doc);
  const app = new AnnotatorApp(client, els, storage);

  els.loginForm.addEventListener("submit", (event) => {
    event.preventDefault();
    const id = els.annotatorInput.value.trim();
    if (id) app.startJudging(id);
  });
  for (const button of els.judgeButtons) {
    button.addEventListener("click", () => {
      void app.judge(button.dataset.category as Category);
    });
  }
  els.bannerRetry.addEventListener("click", () => app.retryPending());
  doc.addEventListener("keydown", (event) => app.handleKeydown(event));

  return app;
}
