import { ApiClient } from './api.js';
import { App } from './app.js';

const app = new App(new ApiClient(''), document.getElementById('app')!);
app.mount();

// handy for manual poking from the devtools console
(window as unknown as { pathwayApp: App }).pathwayApp = app;
