// Module navigation: renders exactly the server's progress snapshot; the
// client never derives unlock state itself. Deep links to locked modules
// redirect back to the last unlocked module with a notice.

import type { ModuleProgress } from "./types";

export interface NavResult {
  moduleId: string;
  redirected: boolean;
  notice?: string;
}

export class ModuleNavigator {
  constructor(private snapshot: ModuleProgress[]) {}

  update(snapshot: ModuleProgress[]): void {
    this.snapshot = snapshot;
  }

  isUnlocked(moduleId: string): boolean {
    const entry = this.snapshot.find((m) => m.id === moduleId);
    return entry ? entry.unlocked : false;
  }

  clickableModules(): string[] {
    return this.snapshot.filter((m) => m.unlocked).map((m) => m.id);
  }

  lastUnlocked(): string {
    const unlocked = this.clickableModules();
    return unlocked[unlocked.length - 1];
  }

  navigate(moduleId: string): NavResult {
    if (this.isUnlocked(moduleId)) {
      return { moduleId, redirected: false };
    }
    return {
      moduleId: this.lastUnlocked(),
      redirected: true,
      notice: "Complete the earlier modules to unlock this one.",
    };
  }

  deepLink(hash: string): NavResult {
    const moduleId = hash.replace(/^#\/?/, "");
    if (!this.snapshot.some((m) => m.id === moduleId)) {
      return {
        moduleId: this.snapshot[0]?.id ?? "",
        redirected: true,
        notice: "Unknown module.",
      };
    }
    return this.navigate(moduleId);
  }
}
